#include "binpack/ranger.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "binpack/kernels/kernels.hpp"

namespace binpack::ranger {

std::string_view to_string(ProbeStrategy::Kind kind) noexcept {
  switch (kind) {
    case ProbeStrategy::Kind::SeededRandom: return "random";
    case ProbeStrategy::Kind::PopLast: return "pop-last";
    case ProbeStrategy::Kind::PopFirst: return "pop-first";
  }
  return "unknown";
}

std::string_view to_string(State state) noexcept {
  switch (state) {
    case State::PhaseA: return "PhaseA";
    case State::PhaseB: return "PhaseB";
    case State::PhaseC: return "PhaseC";
    case State::PhaseD: return "PhaseD";
    case State::PhaseE: return "PhaseE";
    case State::Pair4: return "Pair4";
    case State::Pair3: return "Pair3";
    case State::Pair2: return "Pair2";
    case State::Pair1: return "Pair1";
    case State::Pair0: return "Pair0";
    case State::End: return "End";
  }
  return "unknown";
}

std::pair<int, int> listing_lines(State state) noexcept {
  switch (state) {
    case State::PhaseA: return {3, 10};
    case State::PhaseB: return {11, 17};
    case State::PhaseC: return {18, 23};
    case State::PhaseD: return {24, 28};
    case State::PhaseE: return {29, 32};
    case State::Pair4: return {33, 34};
    case State::Pair3: return {35, 36};
    case State::Pair2: return {37, 38};
    case State::Pair1: return {39, 40};
    case State::Pair0: return {41, 42};
    case State::End: return {43, 43};
  }
  return {0, 0};
}

namespace {

constexpr int kFirstLargeBucket = 5;

// Bucket drained by each large phase and by each pairing phase.
constexpr int large_bucket(State s) { return kFirstLargeBucket + (static_cast<int>(s) - static_cast<int>(State::PhaseA)); }
constexpr int pair_bucket(State s) { return 4 - (static_cast<int>(s) - static_cast<int>(State::Pair4)); }

// Successor when the state's bucket is empty (fall-through in the listing).
constexpr State next_state(State s) { return static_cast<State>(static_cast<int>(s) + 1); }

// Chooses which bucket slot a draw or probe inspects. Random positions come
// from Lemire's multiply-shift with rejection, which is unbiased and, unlike
// std::uniform_int_distribution, the same on every standard library. Two raw
// draws are kept ahead so the engine can prefetch the slots its next picks
// will read.
class Picker {
 public:
  explicit Picker(ProbeStrategy strategy) : kind_(strategy.kind), rng_(strategy.seed) {
    if (random()) ahead_ = {rng_(), rng_()};
  }

  bool random() const noexcept { return kind_ == ProbeStrategy::Kind::SeededRandom; }

  std::size_t pick(std::size_t size) {
    switch (kind_) {
      case ProbeStrategy::Kind::PopLast: return size - 1;
      case ProbeStrategy::Kind::PopFirst: return 0;
      case ProbeStrategy::Kind::SeededRandom: break;
    }
    const std::uint64_t range = size;
    Wide m = static_cast<Wide>(next_raw()) * range;
    if (static_cast<std::uint64_t>(m) < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (static_cast<std::uint64_t>(m) < threshold) m = static_cast<Wide>(next_raw()) * range;
    }
    return static_cast<std::size_t>(m >> 64);
  }

  // Slot the k-th upcoming pick (k < 2) would return for `size`, barring the
  // rare rejection. Random strategy only.
  std::size_t peek(std::size_t k, std::size_t size) const noexcept {
    return static_cast<std::size_t>((static_cast<Wide>(ahead_[k]) * size) >> 64);
  }

 private:
  __extension__ using Wide = unsigned __int128;

  std::uint64_t next_raw() {
    const std::uint64_t v = ahead_[0];
    ahead_ = {ahead_[1], rng_()};
    return v;
  }

  ProbeStrategy::Kind kind_;
  std::mt19937_64 rng_;
  std::array<std::uint64_t, 2> ahead_{};
};

// What the engine keeps per live composite; the load travels with the id so
// a probe reads one bucket slot. Capacities that fit 32 bits use 8 byte
// entries, which halves the memory a random probe touches.
template <typename Load>
struct BasicEntry {
  Load load = 0;
  CompositeId id = 0;
};

struct NullSink {
  template <typename E>
  void operator()(const E&) const noexcept {}
};

struct RecordingSink {
  std::vector<TraceEvent>* events;
  template <typename E>
  void operator()(const E& e) const {
    events->emplace_back(e);
  }
};

// Scratch storage kept per thread between runs. Reusing it avoids faulting
// in fresh pages on every call, which otherwise dominates at large n.
template <typename Load>
struct Workspace {
  using Entry = BasicEntry<Load>;
  std::vector<std::uint8_t> decile;
  std::vector<std::pair<CompositeId, CompositeId>> children;
  std::vector<Entry> closed;
  RangeBuckets<Entry> buckets;
  std::vector<CompositeId> stack;
  std::vector<ItemId> members;

  void clear() {
    decile.clear();
    children.clear();
    closed.clear();
    buckets.clear();
    stack.clear();
    members.clear();
  }
};

template <typename Load>
Workspace<Load>& thread_workspace() {
  thread_local Workspace<Load> ws;
  ws.clear();
  return ws;
}

template <typename Sink, typename Load>
class Engine {
  using Entry = BasicEntry<Load>;

 public:
  Engine(const Instance& instance, ProbeStrategy strategy, Sink sink, Workspace<Load>& ws)
      : instance_(instance),
        capacity_(instance.capacity()),
        picker_(strategy),
        sink_(sink),
        children_(ws.children),
        closed_(ws.closed),
        buckets_(ws.buckets),
        ws_(ws) {}

  std::vector<Bin> run() {
    classify();
    State state = State::PhaseA;
    while (state != State::End) {
      const State next = step(state);
      if (next != state) sink_(trace::Transition{state, next});
      state = next;
    }
    flush();
    return collect();
  }

 private:
  void classify() {
    const auto sizes = instance_.sizes();
    const std::size_t n = sizes.size();
    std::vector<std::uint8_t>& decile = ws_.decile;
    decile.resize(n);
    kernels::classify_deciles(sizes, capacity_, decile);
    item_count_ = static_cast<CompositeId>(n);
    children_.reserve(n);
    closed_.reserve(n);
    std::array<std::size_t, kRangeCount> count{};
    for (std::uint8_t d : decile) ++count[d];
    for (int b = 0; b < kRangeCount; ++b) buckets_.reserve(b, count[b] + count[b] / 4);
    for (std::size_t i = 0; i < n; ++i) {
      const auto id = static_cast<ItemId>(i);
      buckets_.push(decile[i], {static_cast<Load>(sizes[i]), id});
      sink_(trace::Classified{id, decile[i]});
    }
  }

  State step(State state) {
    if (state <= State::PhaseE) return large_step(state);
    return pair_step(state);
  }

  // One iteration of a large phase: draw a from the large bucket, try one
  // candidate from each complementary bucket, highest first; close a alone
  // if none fits.
  State large_step(State state) {
    const int lb = large_bucket(state);
    if (buckets_.empty(lb)) return next_state(state);

    const Entry a = draw(lb);
    for (int pb = kRangeCount - 1 - lb; pb >= 0; --pb) {
      if (buckets_.empty(pb)) continue;
      const std::size_t pos = picker_.pick(buckets_.size(pb));
      const Entry b = buckets_.at(pb, pos);
      const bool fit = Size{a.load} + Size{b.load} <= capacity_;
      sink_(trace::Probe{a.id, pb, b.id, fit});
      if (fit) {
        buckets_.remove_at(pb, pos);
        const Entry c = merge(a, b);
        sink_(trace::Merge{a.id, b.id, c.id, range_index(c.load, capacity_)});
        prefetch_large(lb);
        return state;
      }
    }
    close(a);
    sink_(trace::CloseBin{a.id});
    prefetch_large(lb);
    return state;
  }

  // Touches the slots the next large step will draw and probe so their cache
  // misses overlap with the end of this step.
  void prefetch_large(int lb) const {
    if (!picker_.random() || buckets_.empty(lb)) return;
    __builtin_prefetch(&buckets_.at(lb, picker_.peek(0, buckets_.size(lb))));
    for (int pb = kRangeCount - 1 - lb; pb >= 0; --pb) {
      if (buckets_.empty(pb)) continue;
      __builtin_prefetch(&buckets_.at(pb, picker_.peek(1, buckets_.size(pb))));
      return;
    }
  }

  State pair_step(State state) {
    const int sb = pair_bucket(state);
    const std::size_t count = buckets_.size(sb);
    if (count == 0) return next_state(state);

    if (count == 1) {
      const Entry a = draw(sb);
      for (int lower = sb - 1; lower >= 0; --lower) {
        if (buckets_.empty(lower)) continue;
        const Entry b = draw(lower);
        const Entry c = merge(a, b);
        sink_(trace::LeftoverMerge{a.id, b.id, c.id, range_index(c.load, capacity_)});
        return State::PhaseA;
      }
      close(a);
      sink_(trace::LeftoverClose{a.id});
      return next_state(state);
    }

    const Entry a = draw(sb);
    const Entry b = draw(sb);
    const Entry c = merge(a, b);
    sink_(trace::Merge{a.id, b.id, c.id, range_index(c.load, capacity_)});
    switch (state) {
      case State::Pair4: return State::PhaseD;
      case State::Pair3: return State::PhaseB;
      case State::Pair2: return 2 * c.load > capacity_ ? State::PhaseA : State::Pair4;
      case State::Pair1: return State::Pair4;
      case State::Pair0: return State::Pair2;
      default: break;
    }
    throw std::logic_error("pair_step called outside a pairing state");
  }

  // Normally a no-op: every path into End has drained all buckets.
  void flush() {
    for (int b = 0; b < kRangeCount; ++b) {
      while (!buckets_.empty(b)) {
        const Entry e = buckets_.remove_at(b, buckets_.size(b) - 1);
        close(e);
        sink_(trace::CloseBin{e.id});
      }
    }
  }

  Entry draw(int bucket) { return buckets_.remove_at(bucket, picker_.pick(buckets_.size(bucket))); }

  // Composite ids past the items index children_, which is only appended to;
  // members are expanded once at the end.
  Entry merge(const Entry& a, const Entry& b) {
    const Entry c{static_cast<Load>(Size{a.load} + Size{b.load}), item_count_ + static_cast<CompositeId>(children_.size())};
    children_.push_back({a.id, b.id});
    const int bucket = range_index(c.load, capacity_);
    buckets_.push(bucket, c);
    return c;
  }

  void close(const Entry& e) { closed_.push_back(e); }

  // Members in merge order: a's before b's. Each list is built in a scratch
  // buffer and copied once so every bin makes a single allocation.
  std::vector<Bin> collect() {
    std::vector<Bin> bins(closed_.size());
    std::vector<CompositeId>& stack = ws_.stack;
    std::vector<ItemId>& members = ws_.members;
    constexpr std::size_t kAhead = 8;
    for (std::size_t i = 0; i < closed_.size(); ++i) {
      if (i + kAhead < closed_.size() && closed_[i + kAhead].id >= item_count_) {
        __builtin_prefetch(&children_[closed_[i + kAhead].id - item_count_]);
      }
      members.clear();
      stack.push_back(closed_[i].id);
      while (!stack.empty()) {
        const CompositeId c = stack.back();
        stack.pop_back();
        if (c < item_count_) {
          members.push_back(c);
        } else {
          const auto [a, b] = children_[c - item_count_];
          stack.push_back(b);
          stack.push_back(a);
        }
      }
      bins[i].members.assign(members.begin(), members.end());
      bins[i].load = closed_[i].load;
    }
    return bins;
  }

  const Instance& instance_;
  Size capacity_;
  Picker picker_;
  Sink sink_;
  CompositeId item_count_ = 0;
  std::vector<std::pair<CompositeId, CompositeId>>& children_;
  std::vector<Entry>& closed_;
  RangeBuckets<Entry>& buckets_;
  Workspace<Load>& ws_;
};

Solution make_solution(const Instance& instance, ProbeStrategy strategy, std::vector<Bin> bins) {
  Solution s;
  s.bins = std::move(bins);
  s.algorithm = "ranger";
  if (strategy.kind == ProbeStrategy::Kind::SeededRandom) s.seed = strategy.seed;
  s.capacity = instance.capacity();
  return s;
}

template <typename Sink>
std::vector<Bin> run_engine(const Instance& instance, ProbeStrategy strategy, Sink sink) {
  if (instance.capacity() <= std::numeric_limits<std::uint32_t>::max()) {
    return Engine<Sink, std::uint32_t>(instance, strategy, sink, thread_workspace<std::uint32_t>()).run();
  }
  return Engine<Sink, Size>(instance, strategy, sink, thread_workspace<Size>()).run();
}

}  // namespace

Solution pack(const Instance& instance, ProbeStrategy strategy) {
  return make_solution(instance, strategy, run_engine(instance, strategy, NullSink{}));
}

std::pair<Solution, Trace> pack_with_trace(const Instance& instance, ProbeStrategy strategy) {
  Trace trace;
  Solution s = make_solution(instance, strategy, run_engine(instance, strategy, RecordingSink{&trace.events}));
  return {std::move(s), std::move(trace)};
}

std::vector<Bin> replay(const Instance& instance, const Trace& trace) {
  std::vector<CompositeItem> pool;
  pool.reserve(2 * instance.item_count());
  for (std::size_t i = 0; i < instance.item_count(); ++i) {
    pool.push_back({{static_cast<ItemId>(i)}, instance.size(static_cast<ItemId>(i))});
  }
  std::vector<Bin> bins;
  auto apply_merge = [&](CompositeId a, CompositeId b, CompositeId c) {
    if (c != pool.size()) throw std::runtime_error("trace allocates composite ids out of order");
    CompositeItem merged = pool.at(a);
    merged.members.insert(merged.members.end(), pool.at(b).members.begin(), pool.at(b).members.end());
    merged.load += pool[b].load;
    pool.push_back(std::move(merged));
  };
  auto close = [&](CompositeId id) { bins.push_back(Bin{pool.at(id).members, pool.at(id).load}); };

  for (const TraceEvent& ev : trace.events) {
    if (const auto* m = std::get_if<trace::Merge>(&ev)) {
      apply_merge(m->a, m->b, m->c);
    } else if (const auto* lm = std::get_if<trace::LeftoverMerge>(&ev)) {
      apply_merge(lm->a, lm->b, lm->c);
    } else if (const auto* cb = std::get_if<trace::CloseBin>(&ev)) {
      close(cb->composite);
    } else if (const auto* lc = std::get_if<trace::LeftoverClose>(&ev)) {
      close(lc->composite);
    }
  }
  return bins;
}

TraceCounts count_events(const Trace& trace) {
  TraceCounts c;
  for (const TraceEvent& ev : trace.events) {
    std::visit(
        [&c](const auto& e) {
          using E = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<E, trace::Classified>) ++c.classified;
          else if constexpr (std::is_same_v<E, trace::Probe>) ++c.probes;
          else if constexpr (std::is_same_v<E, trace::Merge>) ++c.merges;
          else if constexpr (std::is_same_v<E, trace::CloseBin>) ++c.closes;
          else if constexpr (std::is_same_v<E, trace::LeftoverMerge>) ++c.leftover_merges;
          else if constexpr (std::is_same_v<E, trace::LeftoverClose>) ++c.leftover_closes;
          else ++c.transitions;
        },
        ev);
  }
  return c;
}

}  // namespace binpack::ranger
