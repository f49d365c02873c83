#include "triwalk/density.hpp"

#include <cmath>
#include <stdexcept>

#include "triwalk/errors.hpp"

namespace triwalk {

namespace {

// Chirality shift per component: L moves left, S stays, R moves right.
constexpr int kShift[3] = {-1, 0, 1};

// B <- X B Y, for the 3x3 block with top-left element `b` and row stride
// `stride`.
void transform_block(cplx* b, std::size_t stride, const Mat3& x, const Mat3& y) {
    cplx tmp[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            tmp[i][j] = x(i, 0) * b[0 * stride + j] + x(i, 1) * b[1 * stride + j] +
                        x(i, 2) * b[2 * stride + j];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            b[i * stride + j] = tmp[i][0] * y(0, j) + tmp[i][1] * y(1, j) + tmp[i][2] * y(2, j);
}

cplx* block_at(std::vector<cplx>& rho, int dim, int t_max, int m, int n) {
    const std::size_t row = static_cast<std::size_t>(3) * (m + t_max);
    const std::size_t col = static_cast<std::size_t>(3) * (n + t_max);
    return rho.data() + row * dim + col;
}

}  // namespace

double JointDensity::trace_real() const {
    const int d = dim();
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += rho[static_cast<std::size_t>(i) * d + i].real();
    return s;
}

JointDensity from_pure(const SpinorState& state) {
    JointDensity out;
    out.t_max = state.t_max;
    out.t = state.t;
    const int d = out.dim();
    out.rho.assign(static_cast<std::size_t>(d) * d, cplx{});
    const int r = state.t;
    for (int m = -r; m <= r; ++m) {
        for (int n = -r; n <= r; ++n) {
            const Vec3 vm = state.site(m);
            const Vec3 vn = state.site(n);
            cplx* b = block_at(out.rho, d, out.t_max, m, n);
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    b[static_cast<std::size_t>(j) * d + k] = vm[j] * std::conj(vn[k]);
        }
    }
    return out;
}

JointDensity apply_unitary_step(const JointDensity& rho, const Mat3& coin) {
    if (rho.t + 1 > rho.t_max)
        throw capacity_error("density step would push the light cone past the lattice half-width " +
                             std::to_string(rho.t_max));
    const int d = rho.dim();
    const int t_max = rho.t_max;
    const int r = rho.t;

    // Coin on every chirality block of the occupied window.
    std::vector<cplx> work = rho.rho;
    const Mat3 coin_adj = adjoint(coin);
    for (int m = -r; m <= r; ++m)
        for (int n = -r; n <= r; ++n)
            transform_block(block_at(work, d, t_max, m, n), d, coin, coin_adj);

    // Shift permutation on block-row and block-column indices.
    JointDensity out;
    out.t_max = t_max;
    out.t = rho.t + 1;
    out.rho.assign(static_cast<std::size_t>(d) * d, cplx{});
    for (int m = -r; m <= r; ++m) {
        for (int n = -r; n <= r; ++n) {
            const cplx* src = block_at(work, d, t_max, m, n);
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) {
                    cplx* dst = block_at(out.rho, d, t_max, m + kShift[j], n + kShift[k]);
                    dst[static_cast<std::size_t>(j) * d + k] =
                        src[static_cast<std::size_t>(j) * d + k];
                }
            }
        }
    }
    return out;
}

JointDensity apply_kraus(const JointDensity& rho, const KrausSet& ks) {
    JointDensity out = rho;
    const int d = out.dim();
    const int r = out.t;
    std::vector<Mat3> adjoints;
    adjoints.reserve(ks.elements.size());
    for (const Mat3& e : ks.elements) adjoints.push_back(adjoint(e));

    for (int m = -r; m <= r; ++m) {
        for (int n = -r; n <= r; ++n) {
            cplx* b = block_at(out.rho, d, out.t_max, m, n);
            Mat3 block;
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    block(j, k) = b[static_cast<std::size_t>(j) * d + k];
            Mat3 acc;
            for (std::size_t e = 0; e < ks.elements.size(); ++e)
                acc = acc + ks.elements[e] * block * adjoints[e];
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    b[static_cast<std::size_t>(j) * d + k] = acc(j, k);
        }
    }
    return out;
}

JointDensity evolve_channel(JointDensity rho, int steps, const Mat3& coin,
                            const KrausSet& ks) {
    if (steps < 0) throw std::invalid_argument("evolve_channel: negative step count");
    for (int i = 0; i < steps; ++i) {
        rho = apply_unitary_step(rho, coin);
        rho = apply_kraus(rho, ks);
    }
    return rho;
}

PositionDistribution density_distribution(const JointDensity& rho) {
    PositionDistribution dist;
    dist.t_max = rho.t_max;
    dist.t = rho.t;
    dist.probs.assign(2 * rho.t_max + 1, 0.0);
    const int d = rho.dim();
    for (int n = -rho.t_max; n <= rho.t_max; ++n) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) {
            const std::size_t i = rho.basis_index(n, k);
            s += rho.rho[i * d + i].real();
        }
        dist.probs[n + rho.t_max] = s;
    }
    return dist;
}

GcpVector density_gcp(const JointDensity& rho) {
    GcpVector g;
    const int d = rho.dim();
    for (int n = -rho.t_max; n <= rho.t_max; ++n) {
        const std::size_t l = rho.basis_index(n, 0);
        const std::size_t s = rho.basis_index(n, 1);
        const std::size_t r = rho.basis_index(n, 2);
        g.p_l += rho.rho[l * d + l].real();
        g.p_s += rho.rho[s * d + s].real();
        g.p_r += rho.rho[r * d + r].real();
    }
    return g;
}

InterferenceTerms density_interference(const JointDensity& rho) {
    InterferenceTerms q;
    const int d = rho.dim();
    for (int n = -rho.t_max; n <= rho.t_max; ++n) {
        const std::size_t l = rho.basis_index(n, 0);
        const std::size_t s = rho.basis_index(n, 1);
        const std::size_t r = rho.basis_index(n, 2);
        q.q1 += rho.rho[l * d + s];
        q.q2 += rho.rho[l * d + r];
        q.q3 += rho.rho[s * d + r];
    }
    return q;
}

double purity(const JointDensity& rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    double s = 0.0;
    for (const cplx& z : rho.rho) s += std::norm(z);
    return s;
}

double density_hermiticity_defect(const JointDensity& rho) {
    const int d = rho.dim();
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            worst = std::max(worst,
                             std::abs(rho.rho[static_cast<std::size_t>(i) * d + j] -
                                      std::conj(rho.rho[static_cast<std::size_t>(j) * d + i])));
    return worst;
}

double min_diagonal(const JointDensity& rho) {
    const int d = rho.dim();
    double lo = rho.rho[0].real();
    for (int i = 0; i < d; ++i)
        lo = std::min(lo, rho.rho[static_cast<std::size_t>(i) * d + i].real());
    return lo;
}

}  // namespace triwalk
