#include "binpack/kernels/kernels.hpp"

namespace binpack::kernels::scalar {

void classify_deciles(std::span<const Size> sizes, Size capacity, std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(range_index(sizes[i], capacity));
  }
}

std::size_t first_fit(std::span<const Size> loads, Size limit) {
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (loads[i] <= limit) return i;
  }
  return npos;
}

std::size_t best_fit(std::span<const Size> loads, Size limit) {
  std::size_t best = npos;
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (loads[i] <= limit && (best == npos || loads[i] > loads[best])) best = i;
  }
  return best;
}

Size sum(std::span<const Size> values) {
  Size total = 0;
  for (Size v : values) total += v;
  return total;
}

std::size_t count_above_half(std::span<const Size> values, Size capacity) {
  std::size_t n = 0;
  for (Size v : values) n += (2 * v > capacity) ? 1 : 0;
  return n;
}

}  // namespace binpack::kernels::scalar
