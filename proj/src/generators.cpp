#include "binpack/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace binpack::generators {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Largest size whose decile is below d, i.e. floor(d * capacity / 10).
Size decile_floor(int d, Size capacity) { return (d * capacity) / 10; }

Size uniform_size(std::mt19937_64& rng, Size lo, Size hi) {
  return std::uniform_int_distribution<Size>(lo, hi)(rng);
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::ComplementaryPair: return "complementary";
    case Family::RangeFamily: return "range";
    case Family::Triplet: return "triplets";
    case Family::Uniform: return "uniform";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  for (Family f : {Family::ComplementaryPair, Family::RangeFamily, Family::Triplet, Family::Uniform}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

Generated gen_complementary_pair(std::size_t k, int m_decile, Size delta, Size capacity) {
  require(k >= 1, "complementary: k must be at least 1");
  require(m_decile >= 5 && m_decile <= 9, "complementary: decile must be in 5..9");
  require(delta >= 1, "complementary: delta must be positive");
  require(capacity >= 1 && capacity <= kMaxCapacity, "complementary: capacity out of range");
  const Size base = decile_floor(m_decile, capacity);
  const Size top = base + static_cast<Size>(k) * delta;
  require(2 * (base + delta) > capacity, "complementary: L_1 must exceed half the capacity");
  require(top < capacity && range_index(top, capacity) == m_decile &&
              range_index(capacity - top, capacity) == 9 - m_decile,
          "complementary: k * delta overflows decile " + std::to_string(m_decile));

  std::vector<Size> sizes;
  sizes.reserve(2 * k);
  for (std::size_t i = 1; i <= k; ++i) sizes.push_back(base + static_cast<Size>(i) * delta);
  for (std::size_t i = k; i >= 1; --i) sizes.push_back(capacity - (base + static_cast<Size>(i) * delta));
  std::string name = "complementary-k" + std::to_string(k) + "-m" + std::to_string(m_decile);
  return {Instance(capacity, std::move(sizes), std::move(name)), k};
}

Instance gen_range_family(std::size_t n, int decile, std::uint64_t seed, Size capacity) {
  require(n >= 1, "range: n must be at least 1");
  require(decile >= 0 && decile <= 9, "range: decile must be in 0..9");
  require(capacity >= 1 && capacity <= kMaxCapacity, "range: capacity out of range");
  const Size lo = decile_floor(decile, capacity) + 1;
  const Size hi = decile_floor(decile + 1, capacity);
  require(lo <= hi, "range: capacity too small for decile " + std::to_string(decile));

  std::mt19937_64 rng(seed);
  std::vector<Size> sizes(n);
  for (Size& s : sizes) s = uniform_size(rng, lo, hi);
  return Instance(capacity, std::move(sizes),
                  "range-d" + std::to_string(decile) + "-n" + std::to_string(n) + "-s" + std::to_string(seed));
}

Generated gen_triplets(std::size_t m, std::uint64_t seed, Size capacity) {
  require(m >= 1, "triplets: m must be at least 1");
  require(capacity >= 1 && capacity <= kMaxCapacity, "triplets: capacity out of range");
  // Sizes a with 4a > capacity and 2a < capacity.
  const Size lo = capacity / 4 + 1;
  const Size hi = (capacity - 1) / 2;
  // Need a triple with a + b <= capacity - lo, i.e. 3 lo <= capacity.
  require(lo <= hi && 3 * lo <= capacity, "triplets: capacity too small");

  std::mt19937_64 rng(seed);
  std::vector<Size> sizes;
  sizes.reserve(3 * m);
  for (std::size_t t = 0; t < m; ++t) {
    Size a = 0, b = 0, c = 0;
    do {
      a = uniform_size(rng, lo, hi);
      b = uniform_size(rng, lo, hi);
      c = capacity - a - b;
    } while (c < lo || c > hi);
    sizes.insert(sizes.end(), {a, b, c});
  }
  std::shuffle(sizes.begin(), sizes.end(), rng);
  return {Instance(capacity, std::move(sizes), "triplets-m" + std::to_string(m) + "-s" + std::to_string(seed)), m};
}

Instance gen_uniform(std::size_t n, Size lo, Size hi, std::uint64_t seed, Size capacity) {
  require(capacity >= 1 && capacity <= kMaxCapacity, "uniform: capacity out of range");
  require(1 <= lo && lo <= hi && hi <= capacity, "uniform: need 1 <= lo <= hi <= capacity");
  std::mt19937_64 rng(seed);
  std::vector<Size> sizes(n);
  for (Size& s : sizes) s = uniform_size(rng, lo, hi);
  return Instance(capacity, std::move(sizes), "uniform-n" + std::to_string(n) + "-s" + std::to_string(seed));
}

Generated generate(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::ComplementaryPair:
      return gen_complementary_pair(spec.count, spec.decile, spec.delta, spec.capacity);
    case Family::RangeFamily:
      return {gen_range_family(spec.count, spec.decile, spec.seed, spec.capacity), std::nullopt};
    case Family::Triplet:
      return gen_triplets(spec.count, spec.seed, spec.capacity);
    case Family::Uniform:
      return {gen_uniform(spec.count, spec.lo, spec.hi, spec.seed, spec.capacity), std::nullopt};
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace binpack::generators
