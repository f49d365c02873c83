#include "triwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace triwalk {

double mean_of(const PositionDistribution& dist) {
    double m = 0.0;
    for (int n = -dist.t_max; n <= dist.t_max; ++n) m += n * dist.at(n);
    return m;
}

double sigma_of(const PositionDistribution& dist) {
    const double mu = mean_of(dist);
    double m2 = 0.0;
    for (int n = -dist.t_max; n <= dist.t_max; ++n)
        m2 += static_cast<double>(n) * n * dist.at(n);
    return std::sqrt(std::max(0.0, m2 - mu * mu));
}

std::array<std::array<double, 3>, 3> markov_gcp_matrix() {
    const double d = 1.0 / 9.0, o = 4.0 / 9.0;
    return {{{d, o, o}, {o, d, o}, {o, o, d}}};
}

GcpVector markov_gcp_step(const GcpVector& g) {
    const auto m = markov_gcp_matrix();
    GcpVector out;
    out.p_l = m[0][0] * g.p_l + m[0][1] * g.p_s + m[0][2] * g.p_r;
    out.p_s = m[1][0] * g.p_l + m[1][1] * g.p_s + m[1][2] * g.p_r;
    out.p_r = m[2][0] * g.p_l + m[2][1] * g.p_s + m[2][2] * g.p_r;
    return out;
}

PositionDistribution gaussian_comparator(const PositionDistribution& dist) {
    const double mu = mean_of(dist);
    const double sigma = sigma_of(dist);
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian_comparator: input has zero variance");
    const double inv2v = 1.0 / (2.0 * sigma * sigma);

    PositionDistribution g;
    g.t_max = dist.t_max;
    g.t = dist.t;
    g.probs.assign(dist.probs.size(), 0.0);
    double total = 0.0;
    for (int n = -g.t_max; n <= g.t_max; ++n) {
        const double x = n - mu;
        const double w = std::exp(-x * x * inv2v);
        g.probs[n + g.t_max] = w;
        total += w;
    }
    for (double& w : g.probs) w /= total;
    return g;
}

double tv_distance(const PositionDistribution& p, const PositionDistribution& q) {
    if (p.t_max != q.t_max)
        throw std::invalid_argument("tv_distance: distributions cover different site ranges");
    double s = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) s += std::abs(p.probs[i] - q.probs[i]);
    return 0.5 * s;
}

LineFit fit_line(const SigmaSeries& sigma, int t_lo, int t_hi) {
    if (t_lo < 0 || t_hi >= static_cast<int>(sigma.size()) || t_hi <= t_lo)
        throw std::invalid_argument("fit_line: bad window");
    const int n = t_hi - t_lo + 1;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int t = t_lo; t <= t_hi; ++t) {
        sx += t;
        sy += sigma[t];
        sxx += static_cast<double>(t) * t;
        sxy += t * sigma[t];
    }
    const double denom = n * sxx - sx * sx;
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (int t = t_lo; t <= t_hi; ++t) {
        const double r = sigma[t] - (fit.slope * t + fit.intercept);
        ss_res += r * r;
        ss_tot += (sigma[t] - ybar) * (sigma[t] - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    return fit;
}

TransitionEstimate estimate_transition(const SigmaSeries& series, double p) {
    const int len = static_cast<int>(series.size());
    if (len < 20)
        throw std::invalid_argument("estimate_transition: series must cover at least 20 steps");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("estimate_transition: p must lie in (0, 1]");

    const int lo = 5;
    int hi = std::min({20, std::max(10, static_cast<int>(std::floor(0.5 / p))),
                       std::max(10, len / 4), len - 1});
    const LineFit fit = fit_line(series, lo, hi);
    if (!(fit.slope > 1e-12))
        throw std::invalid_argument("estimate_transition: degenerate (non-increasing) series");
    return {1.0 / (p * fit.slope), fit.slope};
}

}  // namespace triwalk
