#pragma once

#include "maxbell/tree_model.hpp"

#include <random>

namespace maxbell {

using Rng = std::mt19937_64;

/// Random test function: arity in [2, max_arity], depth in [0, max_depth].
/// Leaves mix zeros, repeated runs (so averages tie) and occasional spikes.
StepFunction random_step_function(Rng& rng, int max_arity = 4, int max_depth = 6);
StepFunction random_step_function(Rng& rng, const TreeConfig& config);

/// Random nonincreasing profile with 1..max_segments segments; the last
/// value may be zero.
Rearranged random_profile(Rng& rng, int max_segments = 8);

/// Uniform draw in [lo, hi).
double uniform(Rng& rng, double lo, double hi);

}  // namespace maxbell
