#pragma once

#include <array>
#include <vector>

#include "triwalk/walk.hpp"

namespace triwalk {

// Standard deviation of displacement per step, indexed by t.
using SigmaSeries = std::vector<double>;

double mean_of(const PositionDistribution& dist);
double sigma_of(const PositionDistribution& dist);

// The classical GCP map (1/9)[[1,4,4],[4,1,4],[4,4,1]]; the Q -> 0
// limit of the Grover-coin GCP evolution.
std::array<std::array<double, 3>, 3> markov_gcp_matrix();
GcpVector markov_gcp_step(const GcpVector& g);

// Discrete Gaussian with the same mean and variance on the same site
// range, renormalized. Rejects zero-variance input.
PositionDistribution gaussian_comparator(const PositionDistribution& dist);

// (1/2) sum_n |p_n - q_n|; requires identical site ranges.
double tv_distance(const PositionDistribution& p, const PositionDistribution& q);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Least-squares line through (t, sigma[t]) for t in [t_lo, t_hi].
LineFit fit_line(const SigmaSeries& sigma, int t_lo, int t_hi);

struct TransitionEstimate {
    double t_c = 0.0;        // steps
    double alpha_hat = 0.0;  // sites per step
};

// Ballistic spread rate from the early window of sigma(t), and the
// crossover time t_c = 1/(p alpha_hat). The window is [5, hi] with
// hi = min(20, max(10, floor(0.5/p)), max(10, len/4), len-1).
TransitionEstimate estimate_transition(const SigmaSeries& series, double p);

}  // namespace triwalk
