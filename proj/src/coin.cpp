#include "triwalk/coin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace triwalk {

Mat3 Mat3::identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
}

Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
    return r;
}

Vec3 operator*(const Mat3& m, const Vec3& v) {
    Vec3 r;
    for (int i = 0; i < 3; ++i)
        r[i] = m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2];
    return r;
}

Mat3 operator+(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

Mat3 operator-(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

Mat3 operator*(cplx s, const Mat3& m) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = s * m.a[i];
    return r;
}

Mat3 adjoint(const Mat3& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

cplx trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

double max_abs(const Mat3& m) {
    double r = 0.0;
    for (const cplx& z : m.a) r = std::max(r, std::abs(z));
    return r;
}

bool all_finite(const Mat3& m) {
    for (const cplx& z : m.a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double unitarity_defect(const Mat3& m) {
    return max_abs(adjoint(m) * m - Mat3::identity());
}

double hermiticity_defect(const Mat3& m) { return max_abs(m - adjoint(m)); }

Mat3 grover_coin() {
    const double d = -1.0 / 3.0, o = 2.0 / 3.0;
    Mat3 c;
    c(0, 0) = d; c(0, 1) = o; c(0, 2) = o;
    c(1, 0) = o; c(1, 1) = d; c(1, 2) = o;
    c(2, 0) = o; c(2, 1) = o; c(2, 2) = d;
    return c;
}

const std::array<Mat3, 8>& gellmann_basis() {
    static const std::array<Mat3, 8> basis = [] {
        const cplx i(0.0, 1.0);
        std::array<Mat3, 8> l{};
        l[0](0, 1) = 1; l[0](1, 0) = 1;
        l[1](0, 1) = -i; l[1](1, 0) = i;
        l[2](0, 0) = 1; l[2](1, 1) = -1;
        l[3](0, 2) = 1; l[3](2, 0) = 1;
        l[4](0, 2) = -i; l[4](2, 0) = i;
        l[5](1, 2) = 1; l[5](2, 1) = 1;
        l[6](1, 2) = -i; l[6](2, 1) = i;
        const double s = 1.0 / std::sqrt(3.0);
        l[7](0, 0) = s; l[7](1, 1) = s; l[7](2, 2) = -2.0 * s;
        return l;
    }();
    return basis;
}

namespace {

double frobenius_norm(const Mat3& m) {
    double s = 0.0;
    for (const cplx& z : m.a) s += std::norm(z);
    return std::sqrt(s);
}

double off_diagonal_norm(const Mat3& m) {
    double s = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (r != c) s += std::norm(m(r, c));
    return std::sqrt(s);
}

// One complex Jacobi rotation eliminating the (p, q) entry of Hermitian
// A; accumulates the rotation into V.
void jacobi_rotate(Mat3& a, Mat3& v, int p, int q) {
    const cplx g = a(p, q);
    const double ag = std::abs(g);
    if (ag == 0.0) return;
    const cplx phase = g / ag;
    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * ag);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    Mat3 j = Mat3::identity();
    j(p, p) = c;
    j(p, q) = s * phase;
    j(q, p) = -s * std::conj(phase);
    j(q, q) = c;

    a = adjoint(j) * a * j;
    v = v * j;
}

}  // namespace

Mat3 herm3_exp(const Mat3& a) {
    const double defect = hermiticity_defect(a);
    if (!all_finite(a) || defect > 1e-9)
        throw std::invalid_argument("herm3_exp: input is not Hermitian (defect " +
                                    std::to_string(defect) + ")");

    // Work on the Hermitian part so roundoff-level asymmetry cannot leak
    // into the eigenvectors.
    Mat3 h = 0.5 * (a + adjoint(a));
    Mat3 v = Mat3::identity();

    const double tol = 1e-14 * std::max(1.0, frobenius_norm(h));
    for (int sweep = 0; sweep < 40 && off_diagonal_norm(h) > tol; ++sweep) {
        jacobi_rotate(h, v, 0, 1);
        jacobi_rotate(h, v, 0, 2);
        jacobi_rotate(h, v, 1, 2);
    }

    // U = V diag(e^{i theta}) V†
    Vec3 phases;
    for (int k = 0; k < 3; ++k)
        phases[k] = std::polar(1.0, h(k, k).real());
    Mat3 u;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            u(r, c) = v(r, 0) * phases[0] * std::conj(v(c, 0)) +
                      v(r, 1) * phases[1] * std::conj(v(c, 1)) +
                      v(r, 2) * phases[2] * std::conj(v(c, 2));
    return u;
}

namespace {

void check_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("channel strength gamma must lie in [0, 1], got " +
                                    std::to_string(gamma));
}

}  // namespace

KrausSet phase_damping_kraus(double gamma) {
    check_gamma(gamma);
    const double third = 2.0 * std::numbers::pi / 3.0;
    Mat3 e0 = cplx(std::sqrt(1.0 - gamma)) * Mat3::identity();
    Mat3 e1;
    e1(0, 0) = std::sqrt(gamma);
    e1(1, 1) = std::sqrt(gamma) * std::polar(1.0, third);
    e1(2, 2) = std::sqrt(gamma) * std::polar(1.0, 2.0 * third);
    return {{e0, e1}, gamma, ChannelKind::PhaseDamping};
}

KrausSet amplitude_damping_kraus(double gamma) {
    check_gamma(gamma);
    Mat3 e0;
    e0(0, 0) = 1.0;
    e0(1, 1) = std::sqrt(1.0 - gamma);
    e0(2, 2) = std::sqrt(1.0 - gamma);
    Mat3 e1;
    e1(0, 1) = std::sqrt(gamma);
    Mat3 e2;
    e2(0, 2) = std::sqrt(gamma);
    return {{e0, e1, e2}, gamma, ChannelKind::AmplitudeDamping};
}

double completeness_defect(const KrausSet& ks) {
    Mat3 sum;
    for (const Mat3& e : ks.elements) sum = sum + adjoint(e) * e;
    return max_abs(sum - Mat3::identity());
}

Mat3 apply_channel(const KrausSet& ks, const Mat3& rho) {
    Mat3 out;
    for (const Mat3& e : ks.elements) out = out + e * rho * adjoint(e);
    return out;
}

std::array<double, 8> sample_noise_alphas(const NoiseGenerator& gen, RngStream& rng) {
    if (!(gen.sigma_a >= 0.0))
        throw std::invalid_argument("sigma_a must be nonnegative");
    std::array<double, 8> alphas;
    for (double& alpha : alphas) alpha = rng.normal(gen.sigma_a);
    return alphas;
}

Mat3 rotation_from_alphas(const std::array<double, 8>& alphas) {
    Mat3 a;
    const auto& basis = gellmann_basis();
    for (int k = 0; k < 8; ++k) a = a + cplx(alphas[k]) * basis[k];
    return herm3_exp(a);
}

Mat3 sample_noise_rotation(const NoiseGenerator& gen, RngStream& rng) {
    return rotation_from_alphas(sample_noise_alphas(gen, rng));
}

}  // namespace triwalk
