#pragma once

#include <cstddef>
#include <vector>

#include "triwalk/coin.hpp"

namespace triwalk {

// Spinor wavefunction of the three-state walk on sites n in
// [-t_max, t_max], three complex amplitudes (a, b, c) = (L, S, R) per
// site, stored site-major. The step counter t bounds the support:
// amplitudes vanish for |n| > t.
struct SpinorState {
    int t_max = 0;
    int t = 0;
    std::vector<cplx> amp;

    int n_sites() const { return 2 * t_max + 1; }
    std::size_t offset(int n, int k) const {
        return static_cast<std::size_t>(3) * (n + t_max) + k;
    }
    cplx amp_at(int n, int k) const { return amp[offset(n, k)]; }
    Vec3 site(int n) const {
        return {amp[offset(n, 0)], amp[offset(n, 1)], amp[offset(n, 2)]};
    }
    double norm_sq() const;
};

// Global chirality probabilities P_L, P_S, P_R.
struct GcpVector {
    double p_l = 0.0;
    double p_s = 0.0;
    double p_r = 0.0;
};

// Site-summed cross products Q1 = sum a b*, Q2 = sum a c*, Q3 = sum b c*.
struct InterferenceTerms {
    cplx q1{};
    cplx q2{};
    cplx q3{};
};

// Chirality-traced probability of finding the walker at each site.
struct PositionDistribution {
    int t_max = 0;
    int t = 0;
    std::vector<double> probs;  // indexed by n + t_max

    int n_sites() const { return 2 * t_max + 1; }
    double at(int n) const { return probs[n + t_max]; }
    double total() const;
};

// All amplitude on site 0 with the given chirality components.
// Rejects |norm - 1| > 1e-9 and t_max < 1.
SpinorState initial_state(const Vec3& coin_amplitudes, int t_max);

// One coin + shift step. Throws capacity_error if the light cone would
// leave the lattice.
SpinorState step_pure(const SpinorState& state, const Mat3& coin);

SpinorState evolve_pure(SpinorState state, int steps, const Mat3& coin);

PositionDistribution position_distribution(const SpinorState& state);
GcpVector gcp(const SpinorState& state);
InterferenceTerms interference_terms(const SpinorState& state);

// Right-hand side of the Grover-coin GCP evolution identity:
// P(t+1) = M P(t) + interference corrections, M = (1/9)[[1,4,4],[4,1,4],[4,4,1]].
GcpVector gcp_evolution_rhs(const GcpVector& g, const InterferenceTerms& q);

// Evolves one step and returns the max discrepancy between the
// state-computed GCP(t+1) and gcp_evolution_rhs applied at time t.
// The identity is specific to the Grover coin; other coins are rejected.
double gcp_step_identity_check(const SpinorState& state, const Mat3& coin);

}  // namespace triwalk
