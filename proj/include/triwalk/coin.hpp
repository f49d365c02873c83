#pragma once

#include <array>
#include <complex>
#include <vector>

#include "triwalk/rng.hpp"

namespace triwalk {

using cplx = std::complex<double>;

// Chirality-space 3-vector: components (L, S, R).
using Vec3 = std::array<cplx, 3>;

// 3x3 complex matrix acting on the chirality space, row-major storage.
struct Mat3 {
    std::array<cplx, 9> a{};

    cplx& operator()(int r, int c) { return a[3 * r + c]; }
    const cplx& operator()(int r, int c) const { return a[3 * r + c]; }

    static Mat3 identity();
    static Mat3 zero() { return Mat3{}; }
};

Mat3 operator*(const Mat3& x, const Mat3& y);
Vec3 operator*(const Mat3& m, const Vec3& v);
Mat3 operator+(const Mat3& x, const Mat3& y);
Mat3 operator-(const Mat3& x, const Mat3& y);
Mat3 operator*(cplx s, const Mat3& m);

Mat3 adjoint(const Mat3& m);
cplx trace(const Mat3& m);
double max_abs(const Mat3& m);
bool all_finite(const Mat3& m);

// max elementwise |M†M - I|
double unitarity_defect(const Mat3& m);
// max elementwise |M - M†|
double hermiticity_defect(const Mat3& m);

// The Grover coin (1/3)[[-1,2,2],[2,-1,2],[2,2,-1]].
Mat3 grover_coin();

// The eight standard Gell-Mann matrices, Tr(l_i l_j) = 2 delta_ij.
const std::array<Mat3, 8>& gellmann_basis();

// U = exp(i a) for Hermitian a, computed by cyclic Jacobi diagonalization.
// Rejects input whose hermiticity defect exceeds 1e-9.
Mat3 herm3_exp(const Mat3& a);

enum class ChannelKind { PhaseDamping, AmplitudeDamping };

// Chirality-space Kraus elements of a trace-preserving channel,
// sum_j E_j† E_j = I.
struct KrausSet {
    std::vector<Mat3> elements;
    double gamma = 0.0;
    ChannelKind kind = ChannelKind::PhaseDamping;
};

// E0 = sqrt(1-g) I, E1 = sqrt(g) diag(1, w, w^2) with w = exp(2 pi i / 3).
KrausSet phase_damping_kraus(double gamma);

// E0 = diag(1, sqrt(1-g), sqrt(1-g)); E1, E2 feed the S and R populations
// into L.
KrausSet amplitude_damping_kraus(double gamma);

// max elementwise |sum_j E_j† E_j - I|
double completeness_defect(const KrausSet& ks);

// Applies the channel to a single chirality-space density matrix.
Mat3 apply_channel(const KrausSet& ks, const Mat3& rho);

// Random unitary coin rotation exp(i sum_k alpha_k lambda_k) with
// iid alpha_k ~ N(0, sigma_a^2).
struct NoiseGenerator {
    double sigma_a = 0.0;
};

std::array<double, 8> sample_noise_alphas(const NoiseGenerator& gen, RngStream& rng);
Mat3 rotation_from_alphas(const std::array<double, 8>& alphas);
Mat3 sample_noise_rotation(const NoiseGenerator& gen, RngStream& rng);

}  // namespace triwalk
