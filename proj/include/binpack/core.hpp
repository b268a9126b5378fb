#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace binpack {

/// Item sizes, loads and capacities are integers in a common unit; an item's
/// weight is the exact rational size / capacity.
using Size = std::int64_t;
using ItemId = std::uint32_t;

inline constexpr int kRangeCount = 10;

/// Upper limit on capacity so that 10 * load and the sum of a large instance
/// stay inside 64-bit arithmetic.
inline constexpr Size kMaxCapacity = 1'000'000'000'000;

struct Item {
  ItemId id;
  Size size;
};

/// Capacity plus item sizes. Immutable once constructed; every size lies in
/// [1, capacity].
class Instance {
 public:
  /// Throws std::invalid_argument when capacity or a size is out of range.
  Instance(Size capacity, std::vector<Size> sizes, std::string name = {});

  Size capacity() const noexcept { return capacity_; }
  std::span<const Size> sizes() const noexcept { return sizes_; }
  Size size(ItemId id) const { return sizes_.at(id); }
  Item item(ItemId id) const { return Item{id, size(id)}; }
  std::size_t item_count() const noexcept { return sizes_.size(); }
  bool empty() const noexcept { return sizes_.empty(); }
  const std::string& name() const noexcept { return name_; }

  /// Same items with capacity and every size multiplied by `factor`.
  Instance scaled(Size factor) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Size capacity_;
  std::vector<Size> sizes_;
  std::string name_;
};

/// Decile of `load` relative to `capacity`: ceil(10 * load / capacity) - 1.
/// Ranges are closed at the top, (k/10, (k+1)/10], so the exact complement of
/// any weight in decile k (k >= 5) lies in decile 9 - k or below, and a weight
/// of exactly 0.5 is small. Requires 1 <= load <= capacity.
constexpr int range_index(Size load, Size capacity) noexcept {
  const Size k = (10 * load - 1) / capacity;
  return k > 9 ? 9 : static_cast<int>(k);
}

/// A partially built bin: some original items and their exact total size.
struct CompositeItem {
  std::vector<ItemId> members;
  Size load = 0;
};

using CompositeId = std::uint32_t;

/// Ten stacks, one per decile, of composite ids or of any small record
/// describing a composite. Removal is swap-remove so every draw is O(1)
/// regardless of which position is chosen.
template <typename T = CompositeId>
class RangeBuckets {
 public:
  void push(int bucket, const T& e) { buckets_[bucket].push_back(e); }
  void reserve(int bucket, std::size_t n) { buckets_[bucket].reserve(n); }
  void clear() noexcept {
    for (auto& b : buckets_) b.clear();
  }
  std::size_t size(int bucket) const noexcept { return buckets_[bucket].size(); }
  bool empty(int bucket) const noexcept { return buckets_[bucket].empty(); }
  const T& at(int bucket, std::size_t pos) const { return buckets_[bucket][pos]; }

  T remove_at(int bucket, std::size_t pos) {
    auto& b = buckets_[bucket];
    const T e = b[pos];
    b[pos] = b.back();
    b.pop_back();
    return e;
  }

  std::size_t total() const noexcept {
    std::size_t n = 0;
    for (const auto& b : buckets_) n += b.size();
    return n;
  }

  std::span<const T> contents(int bucket) const noexcept { return buckets_[bucket]; }

 private:
  std::array<std::vector<T>, kRangeCount> buckets_;
};

struct Bin {
  std::vector<ItemId> members;
  Size load = 0;

  friend bool operator==(const Bin&, const Bin&) = default;
};

struct SolutionStats {
  std::size_t bin_count = 0;
  Size total_slack = 0;
  /// Smallest load / capacity over all bins; 1.0 for an empty solution.
  double min_fill = 1.0;
};

struct Solution {
  std::vector<Bin> bins;
  std::string algorithm;
  std::optional<std::uint64_t> seed;
  Size capacity = 0;

  std::size_t bin_count() const noexcept { return bins.size(); }
  SolutionStats stats() const;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Sorted multiset of bin member lists; equal for two solutions that differ
/// only in bin order or member order.
std::vector<std::vector<ItemId>> canonical_bins(const Solution& solution);

struct Violation {
  enum class Kind { MissingItem, DuplicateItem, UnknownItem, EmptyBin, OverfullBin, LoadMismatch };

  Kind kind;
  std::size_t bin = 0;   // offending bin, when applicable
  ItemId item = 0;       // offending item, when applicable
  Size expected = 0;
  Size actual = 0;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(Violation::Kind kind) const;
};

/// Checks that every item is packed exactly once, every bin fits and every
/// stored load equals the recomputed one. Never throws for malformed input.
ValidationReport validate_solution(const Instance& instance, const Solution& solution);

}  // namespace binpack
