#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "binpack/generators.hpp"
#include "binpack/oracle.hpp"
#include "binpack/ranger.hpp"

using namespace binpack;
using namespace binpack::generators;

namespace {

std::vector<Size> sorted_desc(const Instance& inst) {
  std::vector<Size> v(inst.sizes().begin(), inst.sizes().end());
  std::sort(v.rbegin(), v.rend());
  return v;
}

std::size_t oracle_opt(const Instance& inst) { return oracle::optimum_count(oracle::optimal_bins(inst)).value(); }

}  // namespace

TEST_CASE("complementary pair construction") {
  const Generated g = gen_complementary_pair(2, 6, 20'000, 1'000'000);
  CHECK(sorted_desc(g.instance) == std::vector<Size>{640'000, 620'000, 380'000, 360'000});
  CHECK(g.declared_optimum == 2u);
  CHECK(oracle_opt(g.instance) == 2);

  for (std::size_t k : {1u, 3u, 5u, 8u}) {
    const Generated h = gen_complementary_pair(k, 5, 9'000, 1'000'000);
    const auto sizes = h.instance.sizes();
    const Size cap = h.instance.capacity();
    // Layout: L_1..L_k then S_k..S_1.
    for (std::size_t i = 0; i < k; ++i) {
      const Size li = sizes[i];
      const Size si = sizes[2 * k - 1 - i];
      CHECK(li + si == cap);
      CHECK(range_index(li, cap) == 5);
      CHECK(range_index(si, cap) == 4);
      for (std::size_t j = 0; j < i; ++j) CHECK(li + sizes[2 * k - 1 - j] > cap);
    }
    CHECK(oracle::lower_bound(h.instance) <= k);
    if (2 * k <= 16) CHECK(oracle_opt(h.instance) == k);
  }
  CHECK(gen_complementary_pair(1, 6, 20'000).declared_optimum == 1u);
}

TEST_CASE("complementary pair under pop-last gives k + ceil((k-1)/2) bins") {
  const Generated g = gen_complementary_pair(4, 6, 20'000, 1'000'000);
  CHECK(ranger::pack(g.instance, ranger::ProbeStrategy::pop_last()).bin_count() == 6);
  CHECK(oracle_opt(g.instance) == 4);
  // Up to k = 6 no three small items fit together, so they pair off.
  for (std::size_t k = 1; k <= 6; ++k) {
    const Generated h = gen_complementary_pair(k, 6, 10'000, 1'000'000);
    CHECK(ranger::pack(h.instance, ranger::ProbeStrategy::pop_last()).bin_count() == k + k / 2);
  }
}

TEST_CASE("complementary pair rejects bad parameters") {
  CHECK_THROWS_AS(gen_complementary_pair(6, 6, 20'000), std::invalid_argument);  // 720000 leaves decile 6
  CHECK_THROWS_AS(gen_complementary_pair(2, 4, 1'000), std::invalid_argument);
  CHECK_THROWS_AS(gen_complementary_pair(0, 6, 1'000), std::invalid_argument);
  CHECK_THROWS_AS(gen_complementary_pair(2, 6, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_complementary_pair(10, 9, 10'000), std::invalid_argument);  // reaches capacity
}

TEST_CASE("range family stays inside its decile") {
  const Instance inst = gen_range_family(6, 3, 42);
  CHECK(inst.item_count() == 6);
  for (Size s : inst.sizes()) {
    CHECK(s > 300'000);
    CHECK(s <= 400'000);
    CHECK(range_index(s, inst.capacity()) == 3);
  }
  for (int d = 0; d <= 9; ++d) {
    const Instance r = gen_range_family(50, d, 1, 100);
    for (Size s : r.sizes()) CHECK(range_index(s, 100) == d);
  }
  CHECK_THROWS_AS(gen_range_family(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_range_family(3, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_range_family(3, 2, 1, 5), std::invalid_argument);  // no integer in (1, 1.5]
}

TEST_CASE("range family decile 3 respects 3/2 on a few seeds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = gen_range_family(12, 3, seed);
    const std::size_t opt = oracle_opt(inst);
    CHECK(2 * ranger::pack(inst, ranger::ProbeStrategy::random(seed)).bin_count() <= 3 * opt);
  }
}

TEST_CASE("triplets sum to capacity") {
  const Generated g = gen_triplets(1, 0, 100);
  CHECK(g.declared_optimum == 1u);
  Size total = 0;
  for (Size s : g.instance.sizes()) {
    CHECK(4 * s > 100);
    CHECK(2 * s < 100);
    total += s;
  }
  CHECK(total == 100);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Generated h = gen_triplets(3, seed);
    CHECK(h.instance.item_count() == 9);
    CHECK(oracle_opt(h.instance) == 3);
    const Generated two = gen_triplets(2, seed);
    CHECK(ranger::pack(two.instance, ranger::ProbeStrategy::random(seed)).bin_count() <= 3);
  }
  CHECK_THROWS_AS(gen_triplets(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_triplets(1, 1, 4), std::invalid_argument);  // (1, 1.5) holds no integer
}

TEST_CASE("uniform generator") {
  const Instance flat = gen_uniform(5, 50, 50, 9, 100);
  CHECK(std::vector<Size>(flat.sizes().begin(), flat.sizes().end()) == std::vector<Size>(5, 50));
  CHECK(gen_uniform(100, 1, 100, 7, 100) == gen_uniform(100, 1, 100, 7, 100));
  CHECK_FALSE(gen_uniform(100, 1, 100, 7, 100) == gen_uniform(100, 1, 100, 8, 100));
  CHECK_THROWS_AS(gen_uniform(5, 0, 10, 1, 100), std::invalid_argument);
  CHECK_THROWS_AS(gen_uniform(5, 20, 10, 1, 100), std::invalid_argument);
  CHECK_THROWS_AS(gen_uniform(5, 1, 101, 1, 100), std::invalid_argument);

  const Instance small = gen_uniform(10, 1, 100, 3, 100);
  const std::size_t opt = oracle_opt(small);
  CHECK(oracle::lower_bound(small) <= opt);
  CHECK(2 * ranger::pack(small, ranger::ProbeStrategy::random(3)).bin_count() <= 3 * opt);
}

TEST_CASE("generate dispatches on the family") {
  FamilySpec spec;
  spec.family = Family::Triplet;
  spec.count = 2;
  spec.seed = 4;
  const Generated g = generate(spec);
  CHECK(g.instance == gen_triplets(2, 4).instance);
  CHECK(parse_family("complementary") == Family::ComplementaryPair);
  CHECK(parse_family("range") == Family::RangeFamily);
  CHECK_FALSE(parse_family("nope").has_value());
}
