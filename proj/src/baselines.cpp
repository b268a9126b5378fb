#include "binpack/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "binpack/kernels/kernels.hpp"

namespace binpack::baselines {
namespace {

std::vector<ItemId> decreasing_order(const Instance& instance) {
  std::vector<ItemId> order(instance.item_count());
  std::iota(order.begin(), order.end(), ItemId{0});
  const auto sizes = instance.sizes();
  std::stable_sort(order.begin(), order.end(), [&](ItemId a, ItemId b) { return sizes[a] > sizes[b]; });
  return order;
}

// `choose(loads, limit)` returns the bin index for an item that leaves at most
// `limit` load in place, or npos to open a new bin.
template <typename Choose>
Solution decreasing_fit(const Instance& instance, const char* name, Choose choose) {
  const Size cap = instance.capacity();
  std::vector<Size> loads;
  std::vector<std::vector<ItemId>> members;
  for (ItemId id : decreasing_order(instance)) {
    const Size s = instance.size(id);
    std::size_t bin = choose(std::span<const Size>(loads), cap - s);
    if (bin == kernels::npos) {
      bin = loads.size();
      loads.push_back(0);
      members.emplace_back();
    }
    loads[bin] += s;
    members[bin].push_back(id);
  }

  Solution out;
  out.algorithm = name;
  out.capacity = cap;
  out.bins.reserve(loads.size());
  for (std::size_t i = 0; i < loads.size(); ++i) out.bins.push_back(Bin{std::move(members[i]), loads[i]});
  return out;
}

}  // namespace

Solution ffd(const Instance& instance) {
  return decreasing_fit(instance, "ffd", [](std::span<const Size> loads, Size limit) {
    return kernels::first_fit(loads, limit);
  });
}

Solution bfd(const Instance& instance) {
  return decreasing_fit(instance, "bfd", [](std::span<const Size> loads, Size limit) {
    return kernels::best_fit(loads, limit);
  });
}

}  // namespace binpack::baselines
