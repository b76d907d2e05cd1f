#pragma once

#include <vector>

#include "core/box.hpp"
#include "core/model.hpp"
#include "core/rng.hpp"

namespace nsb {

// Granularity of sampled rational parameters: numerators are drawn uniformly
// from {0..SAMPLE_DENOM}, so every sampled probability is exact with a small
// denominator.
inline constexpr long SAMPLE_DENOM = 1000000;

// Random point of the nonsignaling polytope: positive integer weights over
// the 24 vertices, normalized exactly. Every output validates by construction.
Box random_ns_box(Rng& rng);

// P(a|x)P(b|y) with each single-party probability a random rational.
Box random_product_box(Rng& rng);

// Random nonnegative rational weight vector of length n summing to 1.
std::vector<Rat> random_weights(Rng& rng, int n);

// Two-branch model with deterministic response tables (entries 0 or 1) and a
// random rational branch weight. The boxes these generate are exactly the
// mixtures of two deterministic boxes.
Dim2LocalModel random_deterministic_dim2_model(Rng& rng);

// Two-branch model with arbitrary stochastic response tables.
Dim2LocalModel random_stochastic_dim2_model(Rng& rng);

}  // namespace nsb
