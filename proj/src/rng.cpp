#include "triwalk/rng.hpp"

#include <cmath>

namespace triwalk {

std::uint64_t splitmix64_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : stream_id_(stream_id) {
    std::uint64_t k = splitmix64_mix(master_seed);
    k = splitmix64_mix(k ^ (stream_id + 0x9e3779b97f4a7c15ULL));
    engine_.seed(k);
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal(double sigma) {
    if (has_spare_) {
        has_spare_ = false;
        return spare_ * sigma;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f * sigma;
}

}  // namespace triwalk
