#include <doctest.h>

#include <cmath>
#include <numbers>

#include "triwalk/coin.hpp"
#include "triwalk/rng.hpp"

using namespace triwalk;

namespace {

// Independent oracle: exp(i a) by truncated power series. Accurate to well
// below 1e-10 for the spectral radii used here.
Mat3 series_exp_ia(const Mat3& a, int terms = 30) {
    const cplx i(0.0, 1.0);
    Mat3 ia = i * a;
    Mat3 sum = Mat3::identity();
    Mat3 power = Mat3::identity();
    double factorial = 1.0;
    for (int k = 1; k <= terms; ++k) {
        power = power * ia;
        factorial *= k;
        sum = sum + cplx(1.0 / factorial) * power;
    }
    return sum;
}

Mat3 random_hermitian(RngStream& rng, double scale) {
    Mat3 h;
    for (int r = 0; r < 3; ++r) {
        h(r, r) = scale * (2.0 * rng.uniform01() - 1.0);
        for (int c = r + 1; c < 3; ++c) {
            const cplx z(scale * (2.0 * rng.uniform01() - 1.0),
                         scale * (2.0 * rng.uniform01() - 1.0));
            h(r, c) = z;
            h(c, r) = std::conj(z);
        }
    }
    return h;
}

}  // namespace

TEST_CASE("grover coin columns and unitarity") {
    const Mat3 c = grover_coin();
    const Vec3 e1{cplx(1), cplx(0), cplx(0)};
    const Vec3 col = c * e1;
    CHECK(col[0] == doctest::Approx(-1.0 / 3.0));
    CHECK(col[1] == doctest::Approx(2.0 / 3.0));
    CHECK(col[2] == doctest::Approx(2.0 / 3.0));
    CHECK(unitarity_defect(c) < 1e-15);
}

TEST_CASE("grover coin is an involution") {
    const Mat3 c = grover_coin();
    CHECK(max_abs(c * c - Mat3::identity()) < 1e-15);
}

TEST_CASE("uniform vector is a +1 eigenvector of the grover coin") {
    const double s = 1.0 / std::sqrt(3.0);
    const Vec3 u{cplx(s), cplx(s), cplx(s)};
    const Vec3 v = grover_coin() * u;
    for (int k = 0; k < 3; ++k) CHECK(std::abs(v[k] - u[k]) < 1e-15);
}

TEST_CASE("gellmann basis") {
    const auto& basis = gellmann_basis();

    SUBCASE("lambda_3 is diag(1, -1, 0)") {
        const Mat3& l3 = basis[2];
        CHECK(l3(0, 0) == cplx(1.0));
        CHECK(l3(1, 1) == cplx(-1.0));
        CHECK(l3(2, 2) == cplx(0.0));
    }

    SUBCASE("traceless and Hermitian") {
        for (const Mat3& l : basis) {
            CHECK(std::abs(trace(l)) < 1e-15);
            CHECK(hermiticity_defect(l) < 1e-15);
        }
    }

    SUBCASE("Tr(l_i l_j) = 2 delta_ij") {
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                const cplx t = trace(basis[i] * basis[j]);
                CHECK(std::abs(t - (i == j ? cplx(2.0) : cplx(0.0))) < 1e-15);
            }
    }
}

TEST_CASE("herm3_exp of zero is the identity") {
    CHECK(max_abs(herm3_exp(Mat3::zero()) - Mat3::identity()) == 0.0);
}

TEST_CASE("herm3_exp of alpha lambda_3 is a diagonal phase") {
    const double alpha = 0.7;
    const Mat3 a = cplx(alpha) * gellmann_basis()[2];
    const Mat3 u = herm3_exp(a);
    CHECK(std::abs(u(0, 0) - std::polar(1.0, alpha)) < 1e-14);
    CHECK(std::abs(u(1, 1) - std::polar(1.0, -alpha)) < 1e-14);
    CHECK(std::abs(u(2, 2) - cplx(1.0)) < 1e-14);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (r != c) CHECK(std::abs(u(r, c)) < 1e-14);
}

TEST_CASE("herm3_exp matches the power-series oracle") {
    RngStream rng(2024, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const Mat3 a = random_hermitian(rng, 1.0);
        CHECK(max_abs(herm3_exp(a) - series_exp_ia(a)) < 1e-10);
    }
}

TEST_CASE("herm3_exp output is unitary up to spectral radius 10") {
    RngStream rng(7, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        // Entries in [-s, s] bound the spectral radius by 3 s.
        const Mat3 a = random_hermitian(rng, 10.0 / 3.0);
        worst = std::max(worst, unitarity_defect(herm3_exp(a)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("herm3_exp(a) herm3_exp(-a) is the identity") {
    RngStream rng(8, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const Mat3 a = random_hermitian(rng, 2.0);
        const Mat3 neg = cplx(-1.0) * a;
        CHECK(max_abs(herm3_exp(a) * herm3_exp(neg) - Mat3::identity()) < 1e-11);
    }
}

TEST_CASE("herm3_exp rejects non-Hermitian input") {
    Mat3 bad;
    bad(0, 1) = cplx(0.5, 0.0);
    bad(1, 0) = cplx(0.5, 1e-6);  // conj defect 1e-6 > 1e-9
    CHECK_THROWS_AS(herm3_exp(bad), std::invalid_argument);
}

TEST_CASE("phase damping kraus set") {
    SUBCASE("gamma = 0 is the identity channel") {
        const KrausSet ks = phase_damping_kraus(0.0);
        REQUIRE(ks.elements.size() == 2);
        Mat3 rho;
        rho(0, 1) = cplx(0.3, -0.2);
        rho(1, 0) = cplx(0.3, 0.2);
        rho(0, 0) = 0.5;
        rho(1, 1) = 0.5;
        CHECK(max_abs(apply_channel(ks, rho) - rho) < 1e-15);
    }

    SUBCASE("completeness across gamma") {
        for (int i = 0; i <= 20; ++i)
            CHECK(completeness_defect(phase_damping_kraus(i / 20.0)) < 1e-15);
    }

    SUBCASE("coherence damping factor, minimum modulus at gamma = 0.5") {
        // The channel multiplies the (L,S) coherence by (1-g) + g conj(w).
        for (int i = 1; i < 20; ++i) {
            const double g = i / 20.0;
            Mat3 unit;
            unit(0, 1) = 1.0;
            const Mat3 out = apply_channel(phase_damping_kraus(g), unit);
            const double expected_sq = 1.0 - 3.0 * g * (1.0 - g);
            CHECK(std::norm(out(0, 1)) == doctest::Approx(expected_sq).epsilon(1e-12));
        }
        const Mat3 unit = [] { Mat3 m; m(0, 1) = 1.0; return m; }();
        const Mat3 at_half = apply_channel(phase_damping_kraus(0.5), unit);
        CHECK(std::abs(at_half(0, 1)) == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("rejects gamma outside [0, 1]") {
        CHECK_THROWS_AS(phase_damping_kraus(-0.1), std::invalid_argument);
        CHECK_THROWS_AS(phase_damping_kraus(1.1), std::invalid_argument);
    }
}

TEST_CASE("amplitude damping kraus set") {
    SUBCASE("gamma = 0 is the identity channel") {
        const KrausSet ks = amplitude_damping_kraus(0.0);
        REQUIRE(ks.elements.size() == 3);
        Mat3 rho;
        rho(1, 1) = 1.0;
        CHECK(max_abs(apply_channel(ks, rho) - rho) < 1e-15);
    }

    SUBCASE("gamma = 1 drains S fully into L") {
        Mat3 rho;
        rho(1, 1) = 1.0;
        const Mat3 out = apply_channel(amplitude_damping_kraus(1.0), rho);
        CHECK(out(0, 0) == doctest::Approx(1.0));
        CHECK(std::abs(out(1, 1)) < 1e-15);
        CHECK(std::abs(out(2, 2)) < 1e-15);
    }

    SUBCASE("gamma = 0.5 half-drains S") {
        Mat3 rho;
        rho(1, 1) = 1.0;
        const Mat3 out = apply_channel(amplitude_damping_kraus(0.5), rho);
        CHECK(out(0, 0) == doctest::Approx(0.5));
        CHECK(out(1, 1) == doctest::Approx(0.5));
        CHECK(std::abs(out(2, 2)) < 1e-15);
    }

    SUBCASE("rejects gamma outside [0, 1]") {
        CHECK_THROWS_AS(amplitude_damping_kraus(2.0), std::invalid_argument);
    }
}

TEST_CASE("kraus completeness for 100 random gamma values") {
    RngStream rng(31, 0);
    for (int i = 0; i < 100; ++i) {
        const double g = rng.uniform01();
        CHECK(completeness_defect(phase_damping_kraus(g)) < 1e-14);
        CHECK(completeness_defect(amplitude_damping_kraus(g)) < 1e-14);
    }
}

TEST_CASE("noise rotation") {
    SUBCASE("sigma_a = 0 gives the identity") {
        RngStream rng(3, 0);
        const Mat3 r = sample_noise_rotation(NoiseGenerator{0.0}, rng);
        CHECK(max_abs(r - Mat3::identity()) == 0.0);
    }

    SUBCASE("deterministic for a reset stream") {
        RngStream a(77, 5), b(77, 5);
        const Mat3 ra = sample_noise_rotation(NoiseGenerator{0.1}, a);
        const Mat3 rb = sample_noise_rotation(NoiseGenerator{0.1}, b);
        for (int i = 0; i < 9; ++i) CHECK(ra.a[i] == rb.a[i]);
    }

    SUBCASE("alpha moments are isotropic") {
        RngStream rng(13, 0);
        const int n = 10000;
        const double sigma = 0.1;
        std::array<double, 8> mean{};
        std::array<std::array<double, 8>, 8> cov{};
        for (int i = 0; i < n; ++i) {
            const auto alphas = sample_noise_alphas(NoiseGenerator{sigma}, rng);
            for (int k = 0; k < 8; ++k) {
                mean[k] += alphas[k];
                for (int l = 0; l < 8; ++l) cov[k][l] += alphas[k] * alphas[l];
            }
        }
        for (int k = 0; k < 8; ++k) {
            mean[k] /= n;
            CHECK(std::abs(mean[k]) < 3.0 * sigma / std::sqrt(double(n)) * 1.5);
        }
        const double se_cov = sigma * sigma / std::sqrt(double(n));
        for (int k = 0; k < 8; ++k)
            for (int l = 0; l < 8; ++l) {
                const double c = cov[k][l] / n - mean[k] * mean[l];
                if (k == l)
                    CHECK(c == doctest::Approx(sigma * sigma).epsilon(0.1));
                else
                    CHECK(std::abs(c) < 5.0 * se_cov);
            }
    }

    SUBCASE("rotation is unitary") {
        RngStream rng(14, 0);
        for (int i = 0; i < 50; ++i) {
            const Mat3 r = sample_noise_rotation(NoiseGenerator{0.5}, rng);
            CHECK(unitarity_defect(r) < 1e-12);
        }
    }
}
