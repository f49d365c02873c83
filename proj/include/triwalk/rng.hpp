#pragma once

#include <cstdint>
#include <random>

namespace triwalk {

// Finalizing mixer from the splitmix64 generator; used to derive
// decorrelated per-stream seeds from (master_seed, stream_id).
std::uint64_t splitmix64_mix(std::uint64_t x);

// Deterministic random stream: the triple (master_seed, stream_id, call
// sequence) fully determines every value drawn, independent of platform
// and thread scheduling. Each Monte Carlo trajectory owns one stream with
// stream_id equal to its run index.
class RngStream {
  public:
    explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0);

    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01();

    // N(0, sigma^2) via the Marsaglia polar transform. One spare deviate is
    // cached, so outputs depend only on the call sequence, not on sigma
    // grouping.
    double normal(double sigma);

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    std::mt19937_64 engine_;
    std::uint64_t stream_id_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace triwalk
