#include "triwalk/stochastic.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "triwalk/analysis.hpp"
#include "triwalk/errors.hpp"

namespace triwalk {

void LinkConfig::mark_broken(int e) {
    if (e < edge_lo || e > edge_hi)
        throw std::invalid_argument("mark_broken: edge outside configured range");
    broken[static_cast<std::size_t>(e - edge_lo)] = 1;
}

int LinkConfig::broken_count() const {
    int n = 0;
    for (std::uint8_t b : broken) n += (b != 0);
    return n;
}

LinkConfig sample_links(double p, int site_lo, int site_hi, RngStream& rng) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("sample_links: p must lie in [0, 1]");
    if (site_lo > site_hi)
        throw std::invalid_argument("sample_links: empty site range");
    LinkConfig lc;
    lc.edge_lo = site_lo - 1;
    lc.edge_hi = site_hi;
    lc.broken.assign(static_cast<std::size_t>(lc.edge_hi - lc.edge_lo + 1), 0);
    for (std::uint8_t& b : lc.broken) b = rng.bernoulli(p) ? 1 : 0;
    return lc;
}

SpinorState step_broken(const SpinorState& state, const LinkConfig& links) {
    if (state.t + 1 > state.t_max)
        throw capacity_error("step would push the light cone past the lattice half-width " +
                             std::to_string(state.t_max));
    static const Mat3 coin = grover_coin();
    const int r = state.t;

    // Coin outputs per occupied site; w[m + r] = C v_m.
    std::vector<Vec3> w(static_cast<std::size_t>(2 * r + 1));
    for (int m = -r; m <= r; ++m) w[m + r] = coin * state.site(m);
    const auto w_at = [&](int m, int k) -> cplx {
        if (m < -r || m > r) return cplx{};
        return w[m + r][k];
    };

    SpinorState out;
    out.t_max = state.t_max;
    out.t = state.t + 1;
    out.amp.assign(state.amp.size(), cplx{});
    for (int n = -r - 1; n <= r + 1; ++n) {
        // Left-moving flux from n+1 across edge e_n, or the site's own
        // right-moving flux reflected back when e_n is broken.
        out.amp[out.offset(n, 0)] = links.is_broken(n) ? w_at(n, 2) : w_at(n + 1, 0);
        out.amp[out.offset(n, 1)] = w_at(n, 1);
        out.amp[out.offset(n, 2)] = links.is_broken(n - 1) ? w_at(n, 0) : w_at(n - 1, 2);
    }
    return out;
}

SpinorState step_noisy(const SpinorState& state, const Mat3& coin,
                       const NoiseGenerator& gen, RngStream& rng) {
    return step_pure(state, coin * sample_noise_rotation(gen, rng));
}

namespace {

void validate(const McConfig& cfg) {
    if (cfg.runs < 1) throw std::invalid_argument("McConfig: runs must be >= 1");
    if (cfg.steps < 1) throw std::invalid_argument("McConfig: steps must be >= 1");
    if (cfg.model == NoiseModel::BrokenLinks && !(cfg.p >= 0.0 && cfg.p <= 1.0))
        throw std::invalid_argument("McConfig: p must lie in [0, 1]");
    if (cfg.model == NoiseModel::UnitaryNoise && !(cfg.sigma_a >= 0.0))
        throw std::invalid_argument("McConfig: sigma_a must be nonnegative");
}

void record(TrajectoryStats& stats, const SpinorState& state, int t) {
    const PositionDistribution dist = position_distribution(state);
    stats.sigma[t] = sigma_of(dist);
    stats.gcp_series[t] = gcp(state);
    stats.q_series[t] = interference_terms(state);
    stats.max_norm_drift = std::max(stats.max_norm_drift, std::abs(dist.total() - 1.0));
}

}  // namespace

TrajectoryStats run_trajectory(const McConfig& cfg, int run_index) {
    validate(cfg);
    SpinorState state = initial_state(cfg.initial_coin, cfg.steps + 1);
    RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(run_index));
    const Mat3 coin = grover_coin();
    const NoiseGenerator gen{cfg.sigma_a};

    TrajectoryStats stats;
    stats.sigma.assign(cfg.steps + 1, 0.0);
    stats.gcp_series.assign(cfg.steps + 1, GcpVector{});
    stats.q_series.assign(cfg.steps + 1, InterferenceTerms{});
    record(stats, state, 0);

    for (int t = 0; t < cfg.steps; ++t) {
        if (cfg.model == NoiseModel::BrokenLinks) {
            const int r = state.t;
            const LinkConfig links = sample_links(cfg.p, -r, r, rng);
            state = step_broken(state, links);
        } else {
            state = step_noisy(state, coin, gen, rng);
        }
        record(stats, state, t + 1);
    }
    stats.distribution = position_distribution(state);
    return stats;
}

TrajectoryStats monte_carlo(const McConfig& cfg, int threads) {
    validate(cfg);
    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = std::min(n_threads, cfg.runs);

    std::vector<TrajectoryStats> per_run(cfg.runs);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= cfg.runs) return;
            try {
                per_run[i] = run_trajectory(cfg, i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Deterministic reduction in run-index order.
    TrajectoryStats mean = per_run[0];
    for (int i = 1; i < cfg.runs; ++i) {
        const TrajectoryStats& s = per_run[i];
        for (std::size_t n = 0; n < mean.distribution.probs.size(); ++n)
            mean.distribution.probs[n] += s.distribution.probs[n];
        for (int t = 0; t <= cfg.steps; ++t) {
            mean.sigma[t] += s.sigma[t];
            mean.gcp_series[t].p_l += s.gcp_series[t].p_l;
            mean.gcp_series[t].p_s += s.gcp_series[t].p_s;
            mean.gcp_series[t].p_r += s.gcp_series[t].p_r;
            mean.q_series[t].q1 += s.q_series[t].q1;
            mean.q_series[t].q2 += s.q_series[t].q2;
            mean.q_series[t].q3 += s.q_series[t].q3;
        }
        mean.max_norm_drift = std::max(mean.max_norm_drift, s.max_norm_drift);
    }
    const double inv = 1.0 / cfg.runs;
    for (double& p : mean.distribution.probs) p *= inv;
    for (int t = 0; t <= cfg.steps; ++t) {
        mean.sigma[t] *= inv;
        mean.gcp_series[t].p_l *= inv;
        mean.gcp_series[t].p_s *= inv;
        mean.gcp_series[t].p_r *= inv;
        mean.q_series[t].q1 *= inv;
        mean.q_series[t].q2 *= inv;
        mean.q_series[t].q3 *= inv;
    }
    return mean;
}

}  // namespace triwalk
