#pragma once

// Hand-rolled generators for property tests.

#include <random>
#include <vector>

#include "binpack/core.hpp"

namespace binpack::testing {

/// Mixes several size distributions so boundaries, tiny items and large
/// items all show up. Capacity is picked from a small set that includes
/// values where decile boundaries are hit often.
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_n) {
  static constexpr Size kCapacities[] = {10, 20, 100, 1000, 1'000'000};
  const Size cap = kCapacities[rng() % std::size(kCapacities)];
  const std::size_t n = rng() % (max_n + 1);
  const int mode = static_cast<int>(rng() % 5);
  std::vector<Size> sizes(n);
  for (Size& s : sizes) {
    switch (mode) {
      case 0: s = 1 + static_cast<Size>(rng() % static_cast<std::uint64_t>(cap)); break;
      case 1: s = 1 + static_cast<Size>(rng() % static_cast<std::uint64_t>(std::max<Size>(1, cap / 2))); break;
      case 2: s = 1 + static_cast<Size>(rng() % static_cast<std::uint64_t>(std::max<Size>(1, cap / 3))); break;
      case 3: {
        const Size d = static_cast<Size>(rng() % 10);
        s = std::clamp<Size>(d * cap / 10 + static_cast<Size>(rng() % 3) - 1, 1, cap);
        break;
      }
      default: s = cap / 2 + static_cast<Size>(rng() % static_cast<std::uint64_t>(cap / 2 + 1)); break;
    }
    s = std::clamp<Size>(s, 1, cap);
  }
  return Instance(cap, std::move(sizes));
}

}  // namespace binpack::testing
