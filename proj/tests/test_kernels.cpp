#include <doctest.h>

#include <random>
#include <vector>

#include "binpack/kernels/kernels.hpp"

using namespace binpack;
namespace k = binpack::kernels;

namespace {

std::vector<Size> random_values(std::mt19937_64& rng, std::size_t n, Size hi) {
  std::vector<Size> v(n);
  for (Size& x : v) x = 1 + static_cast<Size>(rng() % static_cast<std::uint64_t>(hi));
  return v;
}

}  // namespace

TEST_CASE("scalar classify matches range_index") {
  const std::vector<Size> sizes{1, 10, 11, 50, 51, 99, 100};
  std::vector<std::uint8_t> out(sizes.size());
  k::scalar::classify_deciles(sizes, 100, out);
  CHECK(out == std::vector<std::uint8_t>{0, 0, 1, 4, 5, 9, 9});
}

TEST_CASE("scalar first_fit and best_fit") {
  const std::vector<Size> loads{90, 40, 70, 70, 20};
  CHECK(k::scalar::first_fit(loads, 75) == 1);
  CHECK(k::scalar::first_fit(loads, 10) == k::npos);
  CHECK(k::scalar::best_fit(loads, 75) == 2);  // 70 twice, lowest index wins
  CHECK(k::scalar::best_fit(loads, 30) == 4);
  CHECK(k::scalar::best_fit(loads, 5) == k::npos);
  CHECK(k::scalar::first_fit({}, 5) == k::npos);
  CHECK(k::scalar::best_fit({}, 5) == k::npos);
}

TEST_CASE("dispatch can be forced and reset") {
  CHECK(k::isa_available(k::Isa::Scalar));
  CHECK(k::force_isa(k::Isa::Scalar));
  CHECK(k::active_isa() == k::Isa::Scalar);
  k::reset_isa();
  if (k::isa_available(k::Isa::Avx2)) {
    CHECK(k::active_isa() == k::Isa::Avx2);
  } else {
    CHECK_FALSE(k::force_isa(k::Isa::Avx2));
    CHECK(k::active_isa() == k::Isa::Scalar);
  }
}

#if defined(BINPACK_HAVE_AVX2)
TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!k::isa_available(k::Isa::Avx2)) {
    MESSAGE("AVX2 not supported by this CPU; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(2024);
  // Lengths cover empty input, partial vectors and several full blocks.
  for (int t = 0; t < 3000; ++t) {
    const std::size_t n = rng() % 67;
    const Size cap = t % 3 == 0 ? 10 : (t % 3 == 1 ? 100 : 1 + static_cast<Size>(rng() % kMaxCapacity));
    const auto sizes = random_values(rng, n, cap);

    std::vector<std::uint8_t> a(n), b(n);
    k::scalar::classify_deciles(sizes, cap, a);
    k::avx2::classify_deciles(sizes, cap, b);
    REQUIRE(a == b);

    CHECK(k::scalar::sum(sizes) == k::avx2::sum(sizes));
    CHECK(k::scalar::count_above_half(sizes, cap) == k::avx2::count_above_half(sizes, cap));

    // Bin loads with many ties so best_fit's lowest-index rule is exercised.
    std::vector<Size> loads(n);
    for (Size& l : loads) l = static_cast<Size>(rng() % 8) * (cap / 8 + 1);
    for (Size limit : {Size{-1}, Size{0}, cap / 3, cap / 2, cap, static_cast<Size>(rng() % (cap + 1))}) {
      CHECK(k::scalar::first_fit(loads, limit) == k::avx2::first_fit(loads, limit));
      CHECK(k::scalar::best_fit(loads, limit) == k::avx2::best_fit(loads, limit));
    }
  }
}

TEST_CASE("avx2 classify at every boundary") {
  if (!k::isa_available(k::Isa::Avx2)) return;
  for (Size cap : {Size{10}, Size{20}, Size{99}, Size{100}, Size{1'000'000}, kMaxCapacity}) {
    std::vector<Size> sizes;
    for (Size d = 0; d <= 10; ++d) {
      const Size b = d * cap / 10;
      for (Size s : {b - 1, b, b + 1}) {
        if (s >= 1 && s <= cap) sizes.push_back(s);
      }
    }
    std::vector<std::uint8_t> a(sizes.size()), b(sizes.size());
    k::scalar::classify_deciles(sizes, cap, a);
    k::avx2::classify_deciles(sizes, cap, b);
    CHECK(a == b);
  }
}
#endif
