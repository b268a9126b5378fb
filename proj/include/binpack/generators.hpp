#pragma once

// Instance families with known or oracle-checkable optima, including the
// adversarial constructions that push the ten-range packer to ratio 3/2.
// All generators are pure functions of their arguments; invalid parameters
// throw std::invalid_argument.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "binpack/core.hpp"

namespace binpack::generators {

inline constexpr Size kDefaultCapacity = 1'000'000;

enum class Family { ComplementaryPair, RangeFamily, Triplet, Uniform };

std::string_view to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

/// Parameters for every family; each family reads only the fields it needs.
struct FamilySpec {
  Family family = Family::Uniform;
  std::size_t count = 10;   // k pairs, n items, or m triples
  int decile = 6;           // large decile for pairs, item decile for ranges
  Size delta = 10'000;
  Size lo = 1;
  Size hi = kDefaultCapacity;
  std::uint64_t seed = 0;
  Size capacity = kDefaultCapacity;
};

struct Generated {
  Instance instance;
  std::optional<std::size_t> declared_optimum;
};

/// k large items L_i = floor(m * capacity / 10) + i * delta (i = 1..k) and their
/// exact complements S_i = capacity - L_i. Items are ordered so that drawing
/// from the back makes every large item except L_1 first meet S_1, which it
/// cannot take. Optimum is k.
Generated gen_complementary_pair(std::size_t k, int m_decile, Size delta, Size capacity = kDefaultCapacity);

/// n sizes uniform on the integer sizes whose range_index is `decile`.
Instance gen_range_family(std::size_t n, int decile, std::uint64_t seed, Size capacity = kDefaultCapacity);

/// m shuffled triples, each summing exactly to capacity, each size strictly
/// between capacity/4 and capacity/2. Optimum is m.
Generated gen_triplets(std::size_t m, std::uint64_t seed, Size capacity = kDefaultCapacity);

/// n independent sizes uniform on [lo, hi].
Instance gen_uniform(std::size_t n, Size lo, Size hi, std::uint64_t seed, Size capacity = kDefaultCapacity);

Generated generate(const FamilySpec& spec);

}  // namespace binpack::generators
