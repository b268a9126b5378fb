#pragma once

// Sorting baselines. Items are taken in nonincreasing size, ties by lower id.

#include "binpack/core.hpp"

namespace binpack::baselines {

/// First-Fit-Decreasing: each item goes to the lowest-indexed bin with room.
Solution ffd(const Instance& instance);

/// Best-Fit-Decreasing: each item goes to the fullest bin with room, lowest
/// index among equally full bins.
Solution bfd(const Instance& instance);

}  // namespace binpack::baselines
