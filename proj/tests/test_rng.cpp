#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "ingsub/rng.hpp"
#include "oracles.hpp"

using ingsub::RngStream;

namespace {

struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

template <typename Draw>
Moments sample_moments(std::size_t n, Draw&& draw) {
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = draw();
        sum += x;
        sumsq += x * x;
    }
    Moments m;
    m.mean = sum / static_cast<double>(n);
    m.var = sumsq / static_cast<double>(n) - m.mean * m.mean;
    return m;
}

}  // namespace

TEST_CASE("identical (seed, stream) pairs reproduce the same raw sequence") {
    RngStream a(1234, 7);
    RngStream b(1234, 7);
    for (int i = 0; i < 100; ++i)
        REQUIRE(a.next_u64() == b.next_u64());
    CHECK(a.seed() == 1234);
    CHECK(a.stream_id() == 7);
}

TEST_CASE("different streams and different seeds decorrelate immediately") {
    RngStream base(1234, 7);
    RngStream other_stream(1234, 8);
    RngStream other_seed(1235, 7);
    int diff_stream = 0, diff_seed = 0;
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t x = base.next_u64();
        if (x != other_stream.next_u64()) ++diff_stream;
        if (x != other_seed.next_u64()) ++diff_seed;
    }
    CHECK(diff_stream == 20);
    CHECK(diff_seed == 20);

    // Stream 0 is a legitimate stream, distinct from stream 1.
    RngStream s0(42, 0);
    RngStream s1(42, 1);
    CHECK(s0.next_u64() != s1.next_u64());
}

TEST_CASE("uniform01 stays inside the open unit interval") {
    RngStream rng(99, 1);
    double lo = 1.0, hi = 0.0;
    const std::size_t n = 200000;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    // With 2e5 draws the extremes should reach well into both tails.
    CHECK(lo < 1e-3);
    CHECK(hi > 1.0 - 1e-3);
    const double se = std::sqrt(1.0 / 12.0 / static_cast<double>(n));
    CHECK(std::fabs(sum / static_cast<double>(n) - 0.5) < 3.0 * se);
}

TEST_CASE("exponential and normal match their first two moments") {
    const std::size_t n = 200000;

    RngStream rng(7, 3);
    const Moments e = sample_moments(n, [&] { return rng.exponential(); });
    // Exponential(1): mean 1, variance 1; SE of the mean is 1/sqrt(n).
    CHECK(std::fabs(e.mean - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(e.var - 1.0) < 0.05);

    RngStream rng2(7, 4);
    const Moments g = sample_moments(n, [&] { return rng2.normal(); });
    CHECK(std::fabs(g.mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    // SE of the sample variance of a normal is sqrt(2/n).
    CHECK(std::fabs(g.var - 1.0) < 3.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("normal spare deviate is part of the reproducible stream state") {
    RngStream a(11, 2);
    std::vector<double> first;
    for (int i = 0; i < 6; ++i) first.push_back(a.normal());

    RngStream b(11, 2);
    for (int i = 0; i < 6; ++i)
        CHECK(b.normal() == first[static_cast<std::size_t>(i)]);

    // The polar method produces pairs, so consecutive draws must not be
    // equal by accident of a stale spare.
    std::set<double> uniq(first.begin(), first.end());
    CHECK(uniq.size() == first.size());
}

TEST_CASE("normal sample passes an Anderson-Darling test against Phi") {
    RngStream rng(2024, 1);
    std::vector<double> sample(20000);
    for (double& x : sample) x = rng.normal();
    const double a2 = oracle::anderson_darling(sample, oracle::normal_cdf);
    // 1% asymptotic critical value for a fully specified normal.
    CHECK(a2 < 3.857);
}

TEST_CASE("gamma_variate moments in both shape regimes") {
    const std::size_t n = 400000;

    // Marsaglia-Tsang main branch: Gamma(2.5) has mean and variance 2.5.
    RngStream rng(5, 1);
    const Moments big = sample_moments(n, [&] { return rng.gamma_variate(2.5); });
    const double se_big = std::sqrt(2.5 / static_cast<double>(n));
    CHECK(std::fabs(big.mean - 2.5) < 3.0 * se_big);
    CHECK(std::fabs(big.var - 2.5) < 0.1);

    // Boosted branch (shape < 1): Gamma(0.3) has mean 0.3, variance 0.3.
    RngStream rng2(5, 2);
    double min_seen = 1e300;
    const Moments small = sample_moments(n, [&] {
        const double x = rng2.gamma_variate(0.3);
        min_seen = std::min(min_seen, x);
        return x;
    });
    CHECK(min_seen > 0.0);
    const double se_small = std::sqrt(0.3 / static_cast<double>(n));
    CHECK(std::fabs(small.mean - 0.3) < 3.0 * se_small);
    CHECK(std::fabs(small.var - 0.3) < 0.05);
}

TEST_CASE("beta_variate matches Beta(a, b) moments and support") {
    const std::size_t n = 400000;
    // Beta(0.3, 0.7): mean a/(a+b) = 0.3, variance ab/((a+b)^2 (a+b+1)) = 0.105.
    RngStream rng(6, 1);
    double lo = 1.0, hi = 0.0;
    const Moments m = sample_moments(n, [&] {
        const double x = rng.beta_variate(0.3, 0.7);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        return x;
    });
    CHECK(lo >= 0.0);
    CHECK(hi <= 1.0);
    const double var = 0.3 * 0.7 / (1.0 * 1.0 * 2.0);
    CHECK(std::fabs(m.mean - 0.3) < 3.0 * std::sqrt(var / static_cast<double>(n)));
    CHECK(std::fabs(m.var - var) < 0.01);
}

TEST_CASE("poisson matches its law in the inversion regime") {
    const std::size_t n = 40000;
    const double mean = 3.2;
    RngStream rng(8, 1);
    std::vector<double> observed(22, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t k = rng.poisson(mean);
        sum += static_cast<double>(k);
        const std::size_t bin = std::min<std::size_t>(k, observed.size() - 1);
        observed[bin] += 1.0;
    }
    CHECK(std::fabs(sum / static_cast<double>(n) - mean) <
          3.0 * std::sqrt(mean / static_cast<double>(n)));

    // Chi-square against the exact pmf, the last bin absorbing the tail.
    std::vector<double> expected(observed.size(), 0.0);
    double pk = std::exp(-mean);
    double cum = 0.0;
    for (std::size_t k = 0; k + 1 < expected.size(); ++k) {
        expected[k] = static_cast<double>(n) * pk;
        cum += pk;
        pk *= mean / static_cast<double>(k + 1);
    }
    expected.back() = static_cast<double>(n) * (1.0 - cum);
    const oracle::Chi2Result chi2 = oracle::chi2_gof(observed, expected);
    CAPTURE(chi2.stat);
    CAPTURE(chi2.dof);
    CHECK(chi2.p_value > 0.01);
}

TEST_CASE("poisson matches its law in the PTRS regime") {
    const std::size_t n = 40000;
    const double mean = 80.0;
    RngStream rng(8, 2);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = static_cast<double>(rng.poisson(mean));
        sum += k;
        sumsq += k * k;
    }
    const double m1 = sum / static_cast<double>(n);
    const double var = sumsq / static_cast<double>(n) - m1 * m1;
    CHECK(std::fabs(m1 - mean) < 3.0 * std::sqrt(mean / static_cast<double>(n)));
    // Var of the sample variance of Poisson(m) is about (2m^2 + m)/n.
    CHECK(std::fabs(var - mean) <
          3.0 * std::sqrt((2.0 * mean * mean + mean) / static_cast<double>(n)));

    // PTRS kicks in just above the switch point; both sides must behave.
    RngStream lo_side(8, 3), hi_side(8, 4);
    double lo_sum = 0.0, hi_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lo_sum += static_cast<double>(lo_side.poisson(29.9));
        hi_sum += static_cast<double>(hi_side.poisson(30.1));
    }
    CHECK(std::fabs(lo_sum / static_cast<double>(n) - 29.9) <
          3.0 * std::sqrt(29.9 / static_cast<double>(n)));
    CHECK(std::fabs(hi_sum / static_cast<double>(n) - 30.1) <
          3.0 * std::sqrt(30.1 / static_cast<double>(n)));
}

TEST_CASE("poisson of mean zero is identically zero") {
    RngStream rng(8, 5);
    for (int i = 0; i < 100; ++i) CHECK(rng.poisson(0.0) == 0);
}

TEST_CASE("sampler domain errors") {
    RngStream rng(1, 1);
    CHECK_THROWS_AS(rng.gamma_variate(0.0), std::domain_error);
    CHECK_THROWS_AS(rng.gamma_variate(-1.5), std::domain_error);
    CHECK_THROWS_AS(rng.beta_variate(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(rng.beta_variate(1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(rng.poisson(-0.5), std::domain_error);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(rng.poisson(inf), std::domain_error);
}
