#include "binpack/core.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace binpack {

Instance::Instance(Size capacity, std::vector<Size> sizes, std::string name)
    : capacity_(capacity), sizes_(std::move(sizes)), name_(std::move(name)) {
  if (capacity_ < 1 || capacity_ > kMaxCapacity) {
    throw std::invalid_argument("capacity " + std::to_string(capacity_) + " outside [1, " +
                                std::to_string(kMaxCapacity) + "]");
  }
  if (sizes_.size() > std::numeric_limits<ItemId>::max()) {
    throw std::invalid_argument("too many items");
  }
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] < 1 || sizes_[i] > capacity_) {
      throw std::invalid_argument("item " + std::to_string(i) + " has size " +
                                  std::to_string(sizes_[i]) + " outside [1, " +
                                  std::to_string(capacity_) + "]");
    }
  }
}

Instance Instance::scaled(Size factor) const {
  if (factor < 1 || capacity_ > kMaxCapacity / factor) {
    throw std::invalid_argument("invalid scale factor " + std::to_string(factor));
  }
  std::vector<Size> sizes(sizes_);
  for (Size& s : sizes) s *= factor;
  return Instance(capacity_ * factor, std::move(sizes), name_);
}

SolutionStats Solution::stats() const {
  SolutionStats st;
  st.bin_count = bins.size();
  for (const Bin& b : bins) {
    st.total_slack += capacity - b.load;
    if (capacity > 0) {
      st.min_fill = std::min(st.min_fill, static_cast<double>(b.load) / static_cast<double>(capacity));
    }
  }
  return st;
}

std::vector<std::vector<ItemId>> canonical_bins(const Solution& solution) {
  std::vector<std::vector<ItemId>> out;
  out.reserve(solution.bins.size());
  for (const Bin& b : solution.bins) {
    auto m = b.members;
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Violation::describe() const {
  const std::string b = std::to_string(bin);
  const std::string id = std::to_string(item);
  switch (kind) {
    case Kind::MissingItem: return "item " + id + " is not packed";
    case Kind::DuplicateItem: return "item " + id + " is packed more than once (again in bin " + b + ")";
    case Kind::UnknownItem: return "bin " + b + " references unknown item " + id;
    case Kind::EmptyBin: return "bin " + b + " is empty";
    case Kind::OverfullBin:
      return "bin " + b + " is overfull (" + std::to_string(actual) + " > " + std::to_string(expected) + ")";
    case Kind::LoadMismatch:
      return "bin " + b + " stores load " + std::to_string(actual) + " but its items sum to " +
             std::to_string(expected);
  }
  return "unknown violation";
}

std::size_t ValidationReport::count(Violation::Kind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

ValidationReport validate_solution(const Instance& instance, const Solution& solution) {
  using K = Violation::Kind;
  ValidationReport report;
  const std::size_t n = instance.item_count();
  std::vector<std::uint32_t> seen(n, 0);

  for (std::size_t bi = 0; bi < solution.bins.size(); ++bi) {
    const Bin& bin = solution.bins[bi];
    if (bin.members.empty()) report.violations.push_back({K::EmptyBin, bi, 0, 0, 0});
    Size load = 0;
    for (ItemId id : bin.members) {
      if (id >= n) {
        report.violations.push_back({K::UnknownItem, bi, id, 0, 0});
        continue;
      }
      if (seen[id]++ > 0) report.violations.push_back({K::DuplicateItem, bi, id, 0, 0});
      load += instance.size(id);
    }
    if (load > instance.capacity()) {
      report.violations.push_back({K::OverfullBin, bi, 0, instance.capacity(), load});
    }
    if (load != bin.load) report.violations.push_back({K::LoadMismatch, bi, 0, load, bin.load});
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (seen[id] == 0) report.violations.push_back({K::MissingItem, 0, static_cast<ItemId>(id), 0, 0});
  }
  return report;
}

}  // namespace binpack
