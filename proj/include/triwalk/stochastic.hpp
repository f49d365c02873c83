#pragma once

#include <cstdint>
#include <vector>

#include "triwalk/coin.hpp"
#include "triwalk/rng.hpp"
#include "triwalk/walk.hpp"

namespace triwalk {

// Set of broken edges for one time step. Edge e_n connects sites n and
// n+1; edges outside the sampled range are intact.
struct LinkConfig {
    int edge_lo = 0;
    int edge_hi = -1;  // inclusive; empty when edge_hi < edge_lo
    std::vector<std::uint8_t> broken;

    bool is_broken(int e) const {
        return e >= edge_lo && e <= edge_hi &&
               broken[static_cast<std::size_t>(e - edge_lo)] != 0;
    }
    void mark_broken(int e);
    int broken_count() const;
};

// Breaks each edge adjacent to sites [site_lo, site_hi] independently
// with probability p. Draw order is low edge to high edge.
LinkConfig sample_links(double p, int site_lo, int site_hi, RngStream& rng);

// Grover-coin step with reflecting broken links: outgoing flux across a
// broken edge re-enters the opposite chirality of the same site. The
// update is a permutation of the per-site coin outputs, so the norm is
// conserved for any link configuration.
SpinorState step_broken(const SpinorState& state, const LinkConfig& links);

// Step with the stochastically rotated coin C exp(i a(t)).
SpinorState step_noisy(const SpinorState& state, const Mat3& coin,
                       const NoiseGenerator& gen, RngStream& rng);

enum class NoiseModel { UnitaryNoise, BrokenLinks };

struct McConfig {
    NoiseModel model = NoiseModel::UnitaryNoise;
    int runs = 1;
    int steps = 1;
    double sigma_a = 0.0;  // UnitaryNoise
    double p = 0.0;        // BrokenLinks
    Vec3 initial_coin{};
    std::uint64_t master_seed = 0;
};

// Per-step observables of one trajectory, or the pointwise ensemble mean.
// Series are indexed by t = 0..steps.
struct TrajectoryStats {
    PositionDistribution distribution;  // at the final step
    std::vector<double> sigma;
    std::vector<GcpVector> gcp_series;
    std::vector<InterferenceTerms> q_series;
    double max_norm_drift = 0.0;  // max |norm - 1| seen at any step
};

// One seeded trajectory; the stream id is the run index.
TrajectoryStats run_trajectory(const McConfig& cfg, int run_index);

// Pointwise mean over runs 0..runs-1. Deterministic for a fixed
// master_seed: per-run streams are keyed by run index and the reduction
// is performed in run order regardless of thread count.
// threads <= 0 selects hardware concurrency.
TrajectoryStats monte_carlo(const McConfig& cfg, int threads = 0);

}  // namespace triwalk
