#pragma once

// Exact minimum bin count for small instances, and a cheap lower bound for
// everything else.

#include <cstdint>
#include <optional>
#include <variant>

#include "binpack/core.hpp"

namespace binpack::oracle {

struct OracleLimits {
  std::size_t max_items = 16;
  std::uint64_t node_budget = 50'000'000;
};

struct Optimum {
  std::size_t bins = 0;
  Solution solution;  // a certificate packing with exactly `bins` bins
  std::uint64_t nodes = 0;
};

struct NotSolved {
  enum class Reason { TooManyItems, NodeBudget };
  Reason reason;
  std::uint64_t nodes = 0;
};

using OracleResult = std::variant<Optimum, NotSolved>;

/// Branch-and-bound over items in decreasing size. Exceeding either limit
/// yields NotSolved rather than an approximate answer.
OracleResult optimal_bins(const Instance& instance, const OracleLimits& limits = {});

/// Bin count when solved.
std::optional<std::size_t> optimum_count(const OracleResult& result);

/// max(ceil(sum / capacity), number of items heavier than half a bin).
std::size_t lower_bound(const Instance& instance);

}  // namespace binpack::oracle
