#include "triwalk/walk.hpp"

#include <cmath>
#include <stdexcept>

#include "triwalk/errors.hpp"

namespace triwalk {

double SpinorState::norm_sq() const {
    double s = 0.0;
    for (const cplx& z : amp) s += std::norm(z);
    return s;
}

double PositionDistribution::total() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

SpinorState initial_state(const Vec3& coin_amplitudes, int t_max) {
    if (t_max < 1)
        throw std::invalid_argument("initial_state: t_max must be at least 1");
    double n = 0.0;
    for (const cplx& z : coin_amplitudes) n += std::norm(z);
    if (std::abs(n - 1.0) > 1e-9)
        throw std::invalid_argument(
            "initial_state: coin amplitudes are not normalized (|norm^2 - 1| = " +
            std::to_string(std::abs(n - 1.0)) + ")");

    SpinorState s;
    s.t_max = t_max;
    s.t = 0;
    s.amp.assign(static_cast<std::size_t>(3) * (2 * t_max + 1), cplx{});
    for (int k = 0; k < 3; ++k) s.amp[s.offset(0, k)] = coin_amplitudes[k];
    return s;
}

namespace {

void require_light_cone(const SpinorState& s) {
    if (s.t + 1 > s.t_max)
        throw capacity_error("step would push the light cone past the lattice half-width " +
                             std::to_string(s.t_max));
}

}  // namespace

SpinorState step_pure(const SpinorState& state, const Mat3& coin) {
    require_light_cone(state);
    SpinorState out;
    out.t_max = state.t_max;
    out.t = state.t + 1;
    out.amp.assign(state.amp.size(), cplx{});
    const int r = state.t;
    for (int m = -r; m <= r; ++m) {
        const Vec3 w = coin * state.site(m);
        out.amp[out.offset(m - 1, 0)] = w[0];
        out.amp[out.offset(m, 1)] = w[1];
        out.amp[out.offset(m + 1, 2)] = w[2];
    }
    return out;
}

SpinorState evolve_pure(SpinorState state, int steps, const Mat3& coin) {
    if (steps < 0) throw std::invalid_argument("evolve_pure: negative step count");
    for (int i = 0; i < steps; ++i) state = step_pure(state, coin);
    return state;
}

PositionDistribution position_distribution(const SpinorState& state) {
    PositionDistribution d;
    d.t_max = state.t_max;
    d.t = state.t;
    d.probs.assign(state.n_sites(), 0.0);
    for (int n = -state.t_max; n <= state.t_max; ++n)
        d.probs[n + state.t_max] = std::norm(state.amp_at(n, 0)) +
                                   std::norm(state.amp_at(n, 1)) +
                                   std::norm(state.amp_at(n, 2));
    return d;
}

GcpVector gcp(const SpinorState& state) {
    GcpVector g;
    for (int n = -state.t_max; n <= state.t_max; ++n) {
        g.p_l += std::norm(state.amp_at(n, 0));
        g.p_s += std::norm(state.amp_at(n, 1));
        g.p_r += std::norm(state.amp_at(n, 2));
    }
    return g;
}

InterferenceTerms interference_terms(const SpinorState& state) {
    InterferenceTerms q;
    for (int n = -state.t_max; n <= state.t_max; ++n) {
        const Vec3 v = state.site(n);
        q.q1 += v[0] * std::conj(v[1]);
        q.q2 += v[0] * std::conj(v[2]);
        q.q3 += v[1] * std::conj(v[2]);
    }
    return q;
}

GcpVector gcp_evolution_rhs(const GcpVector& g, const InterferenceTerms& q) {
    const double r1 = q.q1.real(), r2 = q.q2.real(), r3 = q.q3.real();
    GcpVector out;
    out.p_l = (g.p_l + 4.0 * g.p_s + 4.0 * g.p_r - 4.0 * r1 - 4.0 * r2 + 8.0 * r3) / 9.0;
    out.p_s = (4.0 * g.p_l + g.p_s + 4.0 * g.p_r - 4.0 * r1 + 8.0 * r2 - 4.0 * r3) / 9.0;
    out.p_r = (4.0 * g.p_l + 4.0 * g.p_s + g.p_r + 8.0 * r1 - 4.0 * r2 - 4.0 * r3) / 9.0;
    return out;
}

double gcp_step_identity_check(const SpinorState& state, const Mat3& coin) {
    if (max_abs(coin - grover_coin()) > 1e-12)
        throw std::invalid_argument(
            "gcp_step_identity_check: the GCP evolution identity holds for the Grover coin only");
    const GcpVector rhs = gcp_evolution_rhs(gcp(state), interference_terms(state));
    const GcpVector lhs = gcp(step_pure(state, coin));
    double d = std::abs(lhs.p_l - rhs.p_l);
    d = std::max(d, std::abs(lhs.p_s - rhs.p_s));
    d = std::max(d, std::abs(lhs.p_r - rhs.p_r));
    return d;
}

}  // namespace triwalk
