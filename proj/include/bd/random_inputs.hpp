#pragma once

#include "bd/grid_function.hpp"
#include "bd/pmf.hpp"

namespace bd {

// f = exp(u) where u is a bounded random walk with values clipped to
// [-bound, bound]. Covers both smooth and rough test functions while keeping
// entropy functionals finite.
GridFunction random_walk_function(int len, unsigned long long seed, double bound = 3.0);

// As above, with the top two increments zeroed (interior support).
GridFunction random_interior_function(int len, unsigned long long seed, double bound = 3.0);

// Full-support random pmf: normalized exp of a bounded random walk.
TruncatedPmf random_pmf(int len, unsigned long long seed);

// Random ULC pmf with full support: a Poisson-binomial convolved with a
// small-mean Poisson (ULC is closed under convolution).
TruncatedPmf random_ulc_pmf(unsigned long long seed);

}  // namespace bd
