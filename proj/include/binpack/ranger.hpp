#pragma once

// Linear-time ten-range packer. Items are classified into deciles; large
// items (weight >= 0.5) are matched against one candidate from each
// complementary small decile in turn, then small items are paired within
// their decile. Every merge produces a composite item that is reclassified
// and can be matched again.

#include <cstdint>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "binpack/core.hpp"

namespace binpack::ranger {

/// How a composite is drawn from a bucket.
struct ProbeStrategy {
  enum class Kind { SeededRandom, PopLast, PopFirst };

  Kind kind = Kind::SeededRandom;
  std::uint64_t seed = 0;

  static ProbeStrategy random(std::uint64_t seed) { return {Kind::SeededRandom, seed}; }
  static ProbeStrategy pop_last() { return {Kind::PopLast, 0}; }
  static ProbeStrategy pop_first() { return {Kind::PopFirst, 0}; }

  friend bool operator==(const ProbeStrategy&, const ProbeStrategy&) = default;
};

std::string_view to_string(ProbeStrategy::Kind kind) noexcept;

/// States of the packer. PhaseA..PhaseE drain the large buckets 5..9, Pair4..Pair0
/// pair up composites inside small buckets 4..0.
enum class State { PhaseA, PhaseB, PhaseC, PhaseD, PhaseE, Pair4, Pair3, Pair2, Pair1, Pair0, End };

std::string_view to_string(State state) noexcept;

/// Line range of the state in the original 43-line listing of the method.
std::pair<int, int> listing_lines(State state) noexcept;

namespace trace {

struct Classified {
  ItemId item;
  int bucket;
};
struct Probe {
  CompositeId a;
  int bucket;
  CompositeId b;
  bool fit;
};
struct Merge {
  CompositeId a, b, c;
  int bucket;
};
struct CloseBin {
  CompositeId composite;
};
/// Single composite left in a pairing bucket, merged with one from a lower bucket.
struct LeftoverMerge {
  CompositeId a, b, c;
  int bucket;
};
/// Single composite left in a pairing bucket with nothing below it.
struct LeftoverClose {
  CompositeId composite;
};
struct Transition {
  State from, to;
};

}  // namespace trace

using TraceEvent = std::variant<trace::Classified, trace::Probe, trace::Merge, trace::CloseBin,
                                trace::LeftoverMerge, trace::LeftoverClose, trace::Transition>;

/// Composite ids in a trace: 0..n-1 are the original items in instance order,
/// each merge allocates the next id.
struct Trace {
  std::vector<TraceEvent> events;
};

Solution pack(const Instance& instance, ProbeStrategy strategy);

std::pair<Solution, Trace> pack_with_trace(const Instance& instance, ProbeStrategy strategy);

/// Rebuilds the bins of a run from its Merge/LeftoverMerge/Close events.
std::vector<Bin> replay(const Instance& instance, const Trace& trace);

struct TraceCounts {
  std::size_t classified = 0;
  std::size_t probes = 0;
  std::size_t merges = 0;
  std::size_t closes = 0;
  std::size_t leftover_merges = 0;
  std::size_t leftover_closes = 0;
  std::size_t transitions = 0;
};

TraceCounts count_events(const Trace& trace);

}  // namespace binpack::ranger
