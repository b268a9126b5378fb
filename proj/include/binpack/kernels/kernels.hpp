#pragma once

// Data-parallel inner loops shared by the packers. Each kernel has a scalar
// reference and, where the target supports it, a vector variant; the variant
// is picked once at runtime from the CPU's feature flags.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "binpack/core.hpp"

namespace binpack::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// True when the variant is compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// The variant currently used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Overrides dispatch; returns false (and changes nothing) if unavailable.
bool force_isa(Isa isa) noexcept;

/// Resets dispatch to the best available variant.
void reset_isa() noexcept;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// out[i] = range_index(sizes[i], capacity). `out` must be at least as long
/// as `sizes`.
void classify_deciles(std::span<const Size> sizes, Size capacity, std::span<std::uint8_t> out);

/// Index of the first load with load <= limit, or npos.
std::size_t first_fit(std::span<const Size> loads, Size limit);

/// Index of the largest load with load <= limit (lowest index among equal
/// loads), or npos.
std::size_t best_fit(std::span<const Size> loads, Size limit);

Size sum(std::span<const Size> values);

/// Number of values v with 2 * v > capacity.
std::size_t count_above_half(std::span<const Size> values, Size capacity);

// Direct access to each variant, for equivalence testing and benchmarks.
namespace scalar {
void classify_deciles(std::span<const Size> sizes, Size capacity, std::span<std::uint8_t> out);
std::size_t first_fit(std::span<const Size> loads, Size limit);
std::size_t best_fit(std::span<const Size> loads, Size limit);
Size sum(std::span<const Size> values);
std::size_t count_above_half(std::span<const Size> values, Size capacity);
}  // namespace scalar

namespace avx2 {
void classify_deciles(std::span<const Size> sizes, Size capacity, std::span<std::uint8_t> out);
std::size_t first_fit(std::span<const Size> loads, Size limit);
std::size_t best_fit(std::span<const Size> loads, Size limit);
Size sum(std::span<const Size> values);
std::size_t count_above_half(std::span<const Size> values, Size capacity);
}  // namespace avx2

}  // namespace binpack::kernels
