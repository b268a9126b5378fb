#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 verification found violations, 2 usage, parse or
// parameter error, 3 internal invariant violation.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "binpack/generators.hpp"
#include "binpack/io.hpp"
#include "binpack/ranger.hpp"

namespace binpack::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

enum class Algorithm { Ranger, Ffd, Bfd };

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;
std::optional<ranger::ProbeStrategy::Kind> parse_strategy(std::string_view name) noexcept;

/// Runs one algorithm. `seed` only affects the ranger's random strategy.
Solution run_algorithm(Algorithm algo, const Instance& instance, ranger::ProbeStrategy::Kind strategy,
                       std::uint64_t seed);

struct CompareOptions {
  std::vector<Algorithm> algorithms{Algorithm::Ranger, Algorithm::Ffd, Algorithm::Bfd};
  ranger::ProbeStrategy::Kind strategy = ranger::ProbeStrategy::Kind::SeededRandom;
  std::size_t oracle_max_n = 12;
  std::vector<std::uint64_t> seeds{0};
};

/// One record per (seed, algorithm) in that order. With a family the
/// instance is regenerated per seed; a file instance is reused.
std::vector<io::ResultRecord> compare(const std::optional<Instance>& file_instance,
                                      const std::optional<generators::FamilySpec>& family,
                                      const CompareOptions& options);

struct BenchRow {
  std::size_t n = 0;
  std::int64_t median_ns = 0;
  double ns_per_item = 0.0;
  std::optional<double> growth;  // median_ns / previous row's median_ns
};

/// Times ranger::pack (classification plus state machine) on uniform
/// instances; median over `repeats` runs per size after one warm-up, with
/// sizes interleaved across repeats.
std::vector<BenchRow> bench_ranger(const std::vector<std::size_t>& sizes, std::size_t repeats, std::uint64_t seed,
                                   Size capacity, ranger::ProbeStrategy::Kind strategy);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace binpack::cli
