#include <atomic>

#include "binpack/kernels/kernels.hpp"

namespace binpack::kernels {
namespace {

struct Table {
  Isa isa;
  void (*classify_deciles)(std::span<const Size>, Size, std::span<std::uint8_t>);
  std::size_t (*first_fit)(std::span<const Size>, Size);
  std::size_t (*best_fit)(std::span<const Size>, Size);
  Size (*sum)(std::span<const Size>);
  std::size_t (*count_above_half)(std::span<const Size>, Size);
};

constexpr Table kScalar{Isa::Scalar,  scalar::classify_deciles, scalar::first_fit,
                        scalar::best_fit, scalar::sum,           scalar::count_above_half};

#if defined(BINPACK_HAVE_AVX2)
constexpr Table kAvx2{Isa::Avx2,     avx2::classify_deciles, avx2::first_fit,
                      avx2::best_fit, avx2::sum,              avx2::count_above_half};
#endif

bool cpu_has_avx2() noexcept {
#if defined(BINPACK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Table* best_table() noexcept {
#if defined(BINPACK_HAVE_AVX2)
  if (cpu_has_avx2()) return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const Table*> g_table{nullptr};

const Table& table() noexcept {
  const Table* t = g_table.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = best_table();
    g_table.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() noexcept { return table().isa; }

bool force_isa(Isa isa) noexcept {
  if (!isa_available(isa)) return false;
#if defined(BINPACK_HAVE_AVX2)
  if (isa == Isa::Avx2) {
    g_table.store(&kAvx2, std::memory_order_release);
    return true;
  }
#endif
  g_table.store(&kScalar, std::memory_order_release);
  return true;
}

void reset_isa() noexcept { g_table.store(best_table(), std::memory_order_release); }

void classify_deciles(std::span<const Size> sizes, Size capacity, std::span<std::uint8_t> out) {
  table().classify_deciles(sizes, capacity, out);
}
std::size_t first_fit(std::span<const Size> loads, Size limit) { return table().first_fit(loads, limit); }
std::size_t best_fit(std::span<const Size> loads, Size limit) { return table().best_fit(loads, limit); }
Size sum(std::span<const Size> values) { return table().sum(values); }
std::size_t count_above_half(std::span<const Size> values, Size capacity) {
  return table().count_above_half(values, capacity);
}

}  // namespace binpack::kernels
