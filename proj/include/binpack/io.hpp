#pragma once

// Text formats.
//
// Instance text: capacity on the first line, item count on the second, then
// one integer size per line. Lines starting with '#' and blank lines are
// ignored. If the first line is the token "unit", sizes are decimal weights
// in (0, 1] and are scaled exactly to capacity 10^9.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "binpack/core.hpp"

namespace binpack::io {

inline constexpr Size kUnitCapacity = 1'000'000'000;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string reason);

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

Instance parse_instance(std::string_view text, std::string name = {});

/// Integer form; the name, if any, is written as a leading comment.
std::string serialize_instance(const Instance& instance);

/// Throws std::runtime_error if the file cannot be read.
std::string read_file(const std::string& path);

// --- solutions ---

/// {"algorithm", "seed", "capacity", "bins": [{"members": [...], "load": N}], "stats": {...}}
std::string solution_to_json(const Solution& solution);

/// Accepts the object above or a bare array of bins. A bin is an object with
/// "members" and optional "load", or a plain array of item ids; a missing load
/// is recomputed from the instance (unknown ids count as zero). Throws
/// ParseError on malformed JSON.
Solution solution_from_json(std::string_view text, const Instance& instance);

// --- comparison results ---

struct ResultRecord {
  std::string instance;
  std::string algorithm;
  std::optional<std::uint64_t> seed;
  std::size_t bins = 0;
  std::size_t lower_bound = 0;
  std::optional<std::size_t> optimum;  // oracle value, when solved
  std::optional<double> ratio;         // bins / best known optimum
  std::int64_t elapsed_ns = 0;
  std::size_t n = 0;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

enum class Format { Csv, Json };

/// Column order: instance, algorithm, seed, bins, lower_bound, optimum, ratio,
/// elapsed_ns, n. Missing optionals are empty in CSV and null in JSON.
std::string write_results(const std::vector<ResultRecord>& records, Format format);

std::vector<ResultRecord> read_results_json(std::string_view text);

}  // namespace binpack::io
