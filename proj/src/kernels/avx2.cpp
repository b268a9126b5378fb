// Compiled with -mavx2; only reached through dispatch after a CPU check.

#include <immintrin.h>

#include <bit>

#include "binpack/kernels/kernels.hpp"

namespace binpack::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256i load4(const Size* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }

inline unsigned lane_mask(__m256i m) {
  return static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(m)));
}

inline Size horizontal_max(__m256i v) {
  alignas(32) Size lanes[kLanes];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  Size m = lanes[0];
  for (std::size_t i = 1; i < kLanes; ++i) m = lanes[i] > m ? lanes[i] : m;
  return m;
}

}  // namespace

void classify_deciles(std::span<const Size> sizes, Size capacity, std::span<std::uint8_t> out) {
  // range_index(s) = #{k in 1..9 : 10 s > k capacity}, which needs no division.
  __m256i thresholds[9];
  for (int k = 1; k <= 9; ++k) thresholds[k - 1] = _mm256_set1_epi64x(k * capacity);

  const std::size_t n = sizes.size();
  std::size_t i = 0;
  alignas(32) Size lanes[kLanes];
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i s = load4(sizes.data() + i);
    const __m256i ten = _mm256_add_epi64(_mm256_slli_epi64(s, 3), _mm256_slli_epi64(s, 1));
    __m256i acc = _mm256_setzero_si256();
    for (const __m256i& t : thresholds) acc = _mm256_sub_epi64(acc, _mm256_cmpgt_epi64(ten, t));
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    for (std::size_t l = 0; l < kLanes; ++l) out[i + l] = static_cast<std::uint8_t>(lanes[l]);
  }
  for (; i < n; ++i) out[i] = static_cast<std::uint8_t>(range_index(sizes[i], capacity));
}

std::size_t first_fit(std::span<const Size> loads, Size limit) {
  const __m256i lim = _mm256_set1_epi64x(limit);
  const std::size_t n = loads.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const unsigned too_full = lane_mask(_mm256_cmpgt_epi64(load4(loads.data() + i), lim));
    if (too_full != 0xF) return i + static_cast<std::size_t>(std::countr_one(too_full));
  }
  for (; i < n; ++i) {
    if (loads[i] <= limit) return i;
  }
  return npos;
}

std::size_t best_fit(std::span<const Size> loads, Size limit) {
  const __m256i lim = _mm256_set1_epi64x(limit);
  const __m256i none = _mm256_set1_epi64x(-1);
  const std::size_t n = loads.size();

  // Pass 1: the largest fitting load. Loads are nonnegative so -1 marks "none".
  __m256i best = none;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i v = load4(loads.data() + i);
    const __m256i fitting = _mm256_blendv_epi8(v, none, _mm256_cmpgt_epi64(v, lim));
    best = _mm256_blendv_epi8(best, fitting, _mm256_cmpgt_epi64(fitting, best));
  }
  Size target = horizontal_max(best);
  for (; i < n; ++i) {
    if (loads[i] <= limit && loads[i] > target) target = loads[i];
  }
  if (target < 0) return npos;

  // Pass 2: its lowest index.
  const __m256i t = _mm256_set1_epi64x(target);
  i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const unsigned eq = lane_mask(_mm256_cmpeq_epi64(load4(loads.data() + i), t));
    if (eq != 0) return i + static_cast<std::size_t>(std::countr_zero(eq));
  }
  for (; i < n; ++i) {
    if (loads[i] == target) return i;
  }
  return npos;
}

Size sum(std::span<const Size> values) {
  __m256i acc = _mm256_setzero_si256();
  const std::size_t n = values.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) acc = _mm256_add_epi64(acc, load4(values.data() + i));
  alignas(32) Size lanes[kLanes];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  Size total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += values[i];
  return total;
}

std::size_t count_above_half(std::span<const Size> values, Size capacity) {
  const __m256i cap = _mm256_set1_epi64x(capacity);
  const std::size_t n = values.size();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i twice = _mm256_slli_epi64(load4(values.data() + i), 1);
    count += static_cast<std::size_t>(std::popcount(lane_mask(_mm256_cmpgt_epi64(twice, cap))));
  }
  for (; i < n; ++i) count += (2 * values[i] > capacity) ? 1 : 0;
  return count;
}

}  // namespace binpack::kernels::avx2
