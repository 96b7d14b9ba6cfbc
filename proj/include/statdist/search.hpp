#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "statdist/defaults.hpp"
#include "statdist/mixed.hpp"
#include "statdist/pure_state.hpp"

namespace statdist {

struct SearchConfig {
  int restarts = kDefaultRestarts;
  int steps = kDefaultSteps;  // objective evaluations allowed per restart
  double initial_step = kDefaultStepSize;  // in (0, 1]
  std::uint64_t seed = 0;
  int dim_cap = kDefaultDimCap;
};

struct SearchResult {
  double distance;         // best measurement-dependent distance found
  Eigen::MatrixXcd basis;  // columns of the best orthonormal measurement
};

// Matrix exponential by scaling-and-squaring over a Taylor series truncated
// at the A^12 term (error below 1e-13 once the scaled norm is <= 1/2).
// Skew-Hermitian input gives a unitary result to roundoff.
Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& k);

// Brute-force verifier: random-restart hill climbing over orthonormal bases.
// Each proposal perturbs the current basis by exp(K) with K a seeded
// skew-Hermitian matrix scaled by the current step size; a rejected rotation
// is retried inverted, an accepted one is ridden until it stops paying. The
// step size is halved when a direction is exhausted and doubled (capped at
// the initial size) on improvement. Restarts are independent and reduce by
// an order-free max (ties to the lowest restart index), so the output is
// deterministic for a fixed config. The result never exceeds
// arccos|<s1|s2>| beyond roundoff -- it is itself a measurement-dependent
// distance.
SearchResult optimize_global_measurement(const PureState& s1,
                                         const PureState& s2,
                                         const SearchConfig& cfg);

// Same climb over orthonormal bases for a mixed-state pair, maximizing the
// Bhattacharyya angle of the outcome distributions; its ceiling is the
// Bures angle.
SearchResult optimize_mixed_measurement(const MixedState& r1,
                                        const MixedState& r2,
                                        const SearchConfig& cfg);

// Over `trials` seeded draws of a state pair plus a random rank-1 POVM with
// dim or 2*dim elements, the largest value of |<s1|s2>| - cos(d_M). Must
// come out <= 1e-12 -- the measurement-dependent distance never beats the
// global bound.
double sample_bound_check(int dim, int trials, std::uint64_t seed);

}  // namespace statdist
