#include <doctest.h>

#include <cmath>
#include <vector>

#include "triwalk/rng.hpp"

using triwalk::RngStream;

TEST_CASE("identical seed, stream and call sequence give identical outputs") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, 7), d(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(c.normal(0.3) == d.normal(0.3));
}

TEST_CASE("distinct stream ids decorrelate") {
    RngStream a(42, 0), b(42, 1);
    int equal = 0;
    for (int i = 0; i < 64; ++i) equal += (a.next_u64() == b.next_u64());
    CHECK(equal == 0);
}

TEST_CASE("uniform01 stays in [0, 1)") {
    RngStream rng(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("normal moments") {
    RngStream rng(5, 0);
    const int n = 100000;
    const double sigma = 0.1;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(sigma);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 * sigma / std::sqrt(double(n)));
    CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.05));
}

TEST_CASE("normal(0) is exactly zero") {
    RngStream rng(9, 3);
    for (int i = 0; i < 16; ++i) CHECK(rng.normal(0.0) == 0.0);
}

TEST_CASE("bernoulli fraction matches p") {
    RngStream rng(11, 0);
    const int n = 100000;
    const double p = 0.1;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += rng.bernoulli(p);
    const double se = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(double(hits) / n - p) < 4.0 * se);
}
