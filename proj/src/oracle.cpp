#include "binpack/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "binpack/baselines.hpp"
#include "binpack/kernels/kernels.hpp"

namespace binpack::oracle {
namespace {

class Search {
 public:
  Search(const Instance& instance, const OracleLimits& limits)
      : cap_(instance.capacity()), budget_(limits.node_budget) {
    const std::size_t n = instance.item_count();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), ItemId{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](ItemId a, ItemId b) { return instance.size(a) > instance.size(b); });
    sizes_.resize(n);
    for (std::size_t i = 0; i < n; ++i) sizes_[i] = instance.size(order_[i]);
    suffix_.assign(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix_[i] = suffix_[i + 1] + sizes_[i];
    assign_.assign(n, 0);
    loads_.reserve(n);
  }

  // Returns false if the node budget ran out.
  bool run(std::size_t incumbent, std::size_t floor) {
    best_ = incumbent;
    floor_ = floor;
    dfs(0, 0);
    return !exhausted_;
  }

  std::size_t best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool improved() const { return !best_assign_.empty(); }

  std::vector<Bin> bins() const {
    std::vector<Bin> out(best_);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      Bin& b = out[best_assign_[i]];
      b.members.push_back(order_[i]);
      b.load += sizes_[i];
    }
    return out;
  }

 private:
  // True once the search can stop: an optimum equal to the lower bound was
  // found or the budget is gone.
  bool dfs(std::size_t i, Size placed) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return true;
    }
    const std::size_t used = loads_.size();
    if (i == sizes_.size()) {
      best_ = used;
      best_assign_ = assign_;
      return best_ <= floor_;
    }
    // Remaining items that cannot go into the free space of open bins need new ones.
    const Size free_space = static_cast<Size>(used) * cap_ - placed;
    const Size overflow = suffix_[i] - free_space;
    const std::size_t extra = overflow > 0 ? static_cast<std::size_t>((overflow + cap_ - 1) / cap_) : 0;
    if (used + extra >= best_) return false;

    const Size s = sizes_[i];
    for (std::size_t j = 0; j < used; ++j) {
      if (loads_[j] + s > cap_) continue;
      bool seen = false;
      for (std::size_t k = 0; k < j && !seen; ++k) seen = loads_[k] == loads_[j];
      if (seen) continue;
      loads_[j] += s;
      assign_[i] = static_cast<std::uint32_t>(j);
      const bool stop = dfs(i + 1, placed + s);
      loads_[j] -= s;
      if (stop) return true;
    }
    if (used + 1 < best_) {
      loads_.push_back(s);
      assign_[i] = static_cast<std::uint32_t>(used);
      const bool stop = dfs(i + 1, placed + s);
      loads_.pop_back();
      if (stop) return true;
    }
    return false;
  }

  Size cap_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::size_t best_ = 0;
  std::size_t floor_ = 0;
  std::vector<ItemId> order_;
  std::vector<Size> sizes_;
  std::vector<Size> suffix_;
  std::vector<Size> loads_;
  std::vector<std::uint32_t> assign_;
  std::vector<std::uint32_t> best_assign_;
};

}  // namespace

OracleResult optimal_bins(const Instance& instance, const OracleLimits& limits) {
  if (instance.item_count() > limits.max_items) return NotSolved{NotSolved::Reason::TooManyItems, 0};

  Solution start = baselines::ffd(instance);
  const std::size_t floor = lower_bound(instance);
  Optimum opt;
  if (start.bin_count() > floor) {
    Search search(instance, limits);
    if (!search.run(start.bin_count(), floor)) return NotSolved{NotSolved::Reason::NodeBudget, search.nodes()};
    opt.nodes = search.nodes();
    if (search.improved()) start.bins = search.bins();
  }
  start.algorithm = "oracle";
  opt.bins = start.bin_count();
  opt.solution = std::move(start);
  return opt;
}

std::optional<std::size_t> optimum_count(const OracleResult& result) {
  if (const auto* o = std::get_if<Optimum>(&result)) return o->bins;
  return std::nullopt;
}

std::size_t lower_bound(const Instance& instance) {
  const Size cap = instance.capacity();
  const Size total = kernels::sum(instance.sizes());
  const auto by_weight = static_cast<std::size_t>((total + cap - 1) / cap);
  return std::max(by_weight, kernels::count_above_half(instance.sizes(), cap));
}

}  // namespace binpack::oracle
