#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ingsub/errors.hpp"
#include "ingsub/estimators.hpp"
#include "ingsub/model.hpp"
#include "ingsub/rng.hpp"
#include "ingsub/sim.hpp"
#include "oracles.hpp"
#include "reference_values.hpp"

using namespace ingsub;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool close_rel(double got, double want, double tol) {
    return std::fabs(got - want) <= tol * std::fabs(want) + 1e-14;
}

bool has_note_containing(const est::EstimateReport& rep, const std::string& needle) {
    for (const std::string& note : rep.diagnostics.notes)
        if (note.find(needle) != std::string::npos) return true;
    return false;
}

// InG jump sample with the probability-zero-in-law but possible-in-floats
// degenerate value 1.0 resampled away, so the estimator contract (reject
// exact ones) cannot trip on rounding.
std::vector<double> clean_ing_jumps(double alpha, std::size_t n, RngStream& rng) {
    std::vector<double> out;
    out.reserve(n);
    while (out.size() < n) {
        const double z = sim::sample_jump_ing(alpha, rng);
        if (z > 1.0) out.push_back(z);
    }
    return out;
}

double alpha_of(const est::EstimateReport& rep) {
    REQUIRE(!rep.params.empty());
    REQUIRE(rep.params[0].name == "alpha");
    return rep.params[0].value;
}

}  // namespace

TEST_CASE("closed-form MLE on pinned inputs") {
    // S = ln(2-1) = 0: the arctangent argument blows up and the estimator
    // sits exactly at 1/2.
    {
        const std::vector<double> z = {2.0};
        const est::EstimateReport rep = est::mle_alpha_ing(z);
        CHECK(alpha_of(rep) == 0.5);
        CHECK(rep.diagnostics.branch == "s-zero");
        CHECK(rep.n == 1);
    }
    // S = pi: arctan(pi/pi) = pi/4 > 0, so alpha = 1/4.
    {
        const std::vector<double> z = {1.0 + std::exp(kPi)};
        const est::EstimateReport rep = est::mle_alpha_ing(z);
        CHECK(close_rel(alpha_of(rep), 0.25, 1e-12));
        CHECK(rep.diagnostics.branch == "arctan-positive");
    }
    // S = -pi: arctan lands negative and the branch shifts by pi, alpha = 3/4.
    {
        const std::vector<double> z = {1.0 + std::exp(-kPi)};
        const est::EstimateReport rep = est::mle_alpha_ing(z);
        CHECK(close_rel(alpha_of(rep), 0.75, 1e-12));
        CHECK(rep.diagnostics.branch == "arctan-negative");
    }
    // Rescaled family, n = 2 at eps = 1/2: each term ln((z-eps)/eps) = pi.
    {
        const double z = 0.5 * (1.0 + std::exp(kPi));
        const std::vector<double> jumps = {z, z};
        const est::EstimateReport rep = est::mle_alpha_ing_eps(jumps, 0.5);
        CHECK(close_rel(alpha_of(rep), 0.25, 1e-12));
        CHECK(rep.eps == 0.5);
    }
}

TEST_CASE("MLE input contract") {
    const std::vector<double> empty;
    CHECK_THROWS_AS(est::mle_alpha_ing(empty), validation_error);
    const std::vector<double> below = {0.5, 2.0};
    CHECK_THROWS_AS(est::mle_alpha_ing(below), std::domain_error);
    const std::vector<double> degenerate = {2.0, 1.0};
    CHECK_THROWS_AS(est::mle_alpha_ing(degenerate), validation_error);

    const std::vector<double> ok = {1.5};
    CHECK_THROWS_AS(est::mle_alpha_ing_eps(ok, 0.0), validation_error);
    CHECK_THROWS_AS(est::mle_alpha_ing_eps(ok, -1.0), validation_error);
    const std::vector<double> at_eps = {0.5};
    CHECK_THROWS_AS(est::mle_alpha_ing_eps(at_eps, 0.5), validation_error);
    const std::vector<double> below_eps = {0.4};
    CHECK_THROWS_AS(est::mle_alpha_ing_eps(below_eps, 0.5), std::domain_error);
}

TEST_CASE("eps = 1 reduces exactly to the base estimator") {
    RngStream rng(500, 1);
    const std::vector<double> jumps = clean_ing_jumps(0.45, 300, rng);
    const double base = alpha_of(est::mle_alpha_ing(jumps));
    const double eps1 = alpha_of(est::mle_alpha_ing_eps(jumps, 1.0));
    CHECK(base == eps1);
}

TEST_CASE("rescaled MLE is invariant under common rescaling of data and eps") {
    RngStream rng(501, 1);
    std::vector<double> jumps = clean_ing_jumps(0.6, 200, rng);
    for (double& z : jumps) z *= 0.5;  // data on the eps = 0.5 scale
    const double ref = alpha_of(est::mle_alpha_ing_eps(jumps, 0.5));
    for (double c : {0.1, 3.7}) {
        std::vector<double> scaled = jumps;
        for (double& z : scaled) z *= c;
        const double got = alpha_of(est::mle_alpha_ing_eps(scaled, 0.5 * c));
        CAPTURE(c);
        CHECK(close_rel(got, ref, 1e-12));
    }
}

TEST_CASE("MLE matches brute-force likelihood maximization at alpha = 0.7") {
    RngStream rng(502, 1);
    const std::vector<double> jumps = clean_ing_jumps(0.7, 10000, rng);
    const est::EstimateReport rep = est::mle_alpha_ing(jumps);
    const double brute = oracle::golden_max(
        [&](double a) { return oracle::ing_loglik(a, jumps); }, 1e-6, 1.0 - 1e-6);
    CHECK(std::fabs(alpha_of(rep) - brute) < 1e-6);
    // 3 sigma / sqrt(n) with sigma = sin(0.7 pi)/pi.
    CHECK(std::fabs(alpha_of(rep) - 0.7) < 3.0 * std::sin(0.7 * kPi) / kPi / 100.0);
}

TEST_CASE("MLE equals the likelihood maximizer across random datasets") {
    RngStream rng(503, 1);
    for (int rep_i = 0; rep_i < 100; ++rep_i) {
        const double alpha = 0.08 + 0.72 * rng.uniform01();
        const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform01() * 55.0);
        const std::vector<double> jumps = clean_ing_jumps(alpha, n, rng);

        const est::EstimateReport rep = est::mle_alpha_ing(jumps);
        const double a_hat = alpha_of(rep);
        const double brute = oracle::golden_max(
            [&](double a) { return oracle::ing_loglik(a, jumps); }, 1e-6, 1.0 - 1e-6);
        CAPTURE(alpha);
        CAPTURE(n);
        CHECK(std::fabs(a_hat - brute) < 1e-6);

        // The stationarity identity tan(pi alpha) S = n pi, away from the
        // removable S = 0 case.
        const double s = rep.diagnostics.extra.at("s_statistic");
        if (std::fabs(s) > 1e-8) {
            const double lhs = std::tan(kPi * a_hat) * s;
            CHECK(close_rel(lhs, static_cast<double>(n) * kPi, 1e-9));
        }
    }
}

TEST_CASE("rescaled MLE equals its likelihood maximizer across random datasets") {
    RngStream rng(504, 1);
    for (int rep_i = 0; rep_i < 100; ++rep_i) {
        const double alpha = 0.08 + 0.72 * rng.uniform01();
        const double eps = 0.1 + 2.9 * rng.uniform01();
        const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform01() * 55.0);
        std::vector<double> jumps;
        jumps.reserve(n);
        RngStream jrng(505, static_cast<std::uint64_t>(rep_i) + 1);
        while (jumps.size() < n) {
            const double z = sim::sample_jump_ing_eps(alpha, eps, jrng);
            if (z > eps) jumps.push_back(z);
        }
        const double a_hat = alpha_of(est::mle_alpha_ing_eps(jumps, eps));
        const double brute = oracle::golden_max(
            [&](double a) { return oracle::ing_eps_loglik(a, eps, jumps); }, 1e-6,
            1.0 - 1e-6);
        CAPTURE(alpha);
        CAPTURE(eps);
        CHECK(std::fabs(a_hat - brute) < 1e-6);
    }
}

TEST_CASE("asymptotic confidence interval construction") {
    RngStream rng(506, 1);
    const std::vector<double> jumps = clean_ing_jumps(0.35, 500, rng);

    est::EstimateReport rep =
        est::mle_asymptotic_ci(est::mle_alpha_ing(jumps), 0.95);
    CHECK(rep.ci_level == 0.95);
    const est::ParamEstimate& p = rep.params[0];
    REQUIRE(p.std_error.has_value());
    REQUIRE(p.ci.has_value());
    const double a_hat = p.value;
    // Default model is the inverse Fisher information.
    const double sigma = std::sin(kPi * a_hat) / kPi;
    CHECK(close_rel(*p.std_error, sigma / std::sqrt(500.0), 1e-12));
    const double q = 1.959963984540053855604;
    CHECK(close_rel((*p.ci)[1] - (*p.ci)[0], 2.0 * q * *p.std_error, 1e-9));
    CHECK((*p.ci)[0] <= a_hat);
    CHECK((*p.ci)[1] >= a_hat);

    CHECK(rep.diagnostics.extra.count("sigma2_fisher") == 1);
    CHECK(rep.diagnostics.extra.count("sigma2_reported") == 1);
    CHECK(rep.diagnostics.extra.count("sigma2_used") == 1);
    CHECK(rep.diagnostics.extra.at("sigma2_used") ==
          rep.diagnostics.extra.at("sigma2_fisher"));
    CHECK(has_note_containing(rep, "disagree"));
}

TEST_CASE("interval endpoints clip to the parameter range") {
    // A single jump with a microscopic gap pushes alpha toward 1; with
    // n = 1 the interval spills past 1 and must clip.
    const std::vector<double> z = {1.0 + 1e-12};
    est::EstimateReport rep = est::mle_asymptotic_ci(est::mle_alpha_ing(z), 0.999);
    const est::ParamEstimate& p = rep.params[0];
    CHECK(p.value > 0.95);
    CHECK((*p.ci)[1] == 1.0);
    CHECK((*p.ci)[0] >= 0.0);
    CHECK(has_note_containing(rep, "n < 30"));
}

TEST_CASE("variance models coincide exactly at alpha = 1/2") {
    const std::vector<double> z = {2.0};  // S = 0, alpha = 1/2
    est::EstimateReport fisher = est::mle_asymptotic_ci(
        est::mle_alpha_ing(z), 0.9, est::VarianceModel::FisherInG);
    est::EstimateReport reported = est::mle_asymptotic_ci(
        est::mle_alpha_ing(z), 0.9, est::VarianceModel::ReportedInG);
    CHECK(close_rel(*fisher.params[0].std_error, *reported.params[0].std_error, 1e-13));
    CHECK(close_rel(fisher.diagnostics.extra.at("sigma2_used"), 1.0 / (kPi * kPi),
                    1e-13));
    CHECK_FALSE(has_note_containing(fisher, "disagree"));

    // At eps = 1 and alpha = 1/2 the rescaled-family model also collapses
    // to 1/pi^2.
    est::EstimateReport eps_rep = est::mle_asymptotic_ci(
        est::mle_alpha_ing_eps(z, 1.0), 0.9, est::VarianceModel::ReportedInGEps);
    CHECK(close_rel(*eps_rep.params[0].std_error, *fisher.params[0].std_error, 1e-13));
}

TEST_CASE("confidence interval input contract") {
    const std::vector<double> z = {2.0};
    CHECK_THROWS_AS(est::mle_asymptotic_ci(est::mle_alpha_ing(z), 0.0),
                    validation_error);
    CHECK_THROWS_AS(est::mle_asymptotic_ci(est::mle_alpha_ing(z), 1.0),
                    validation_error);
    // ReportedInGEps needs the eps recorded in the report.
    CHECK_THROWS_AS(est::mle_asymptotic_ci(est::mle_alpha_ing(z), 0.95,
                                           est::VarianceModel::ReportedInGEps),
                    validation_error);
}

TEST_CASE("score function value and moments") {
    CHECK(std::fabs(est::score_ing(0.5, 2.0)) < 1e-14);
    CHECK_THROWS_AS(est::score_ing(0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(est::score_ing(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(est::score_ing(0.5, 1.0), std::domain_error);

    // Mean zero under the model, variance pi^2 csc^2(pi alpha).
    const double alpha = 0.3;
    const std::size_t n = 200000;
    RngStream rng(507, 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = sim::sample_jump_ing(alpha, rng);
        if (z > 1.0) sum += est::score_ing(alpha, z);
    }
    const double sd = kPi / std::sin(kPi * alpha);
    CHECK(std::fabs(sum / static_cast<double>(n)) <
          3.0 * sd / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("tempered-path moments against the frozen grid and quadrature") {
    for (const auto& row : refval::kTingMomentGrid) {
        const double alpha = row[0], theta = row[1];
        CAPTURE(alpha);
        CAPTURE(theta);
        CHECK(close_rel(est::ting_mean(alpha, theta, 1.0), row[2], 1e-12));
        CHECK(close_rel(est::ting_second_moment(alpha, theta, 1.0), row[3], 1e-12));
    }

    // Mean = t rate E[Z] with both factors from independent quadrature.
    const double rate = 0.5 * oracle::gamma_upper_quad(0.5, 0.4);
    CHECK(close_rel(est::ting_mean(0.5, 0.4, 1.0),
                    rate * refval::kTingMeanJump_05_04, 1e-9));
    // Raw second moment of the path at t: (t rate) E[Z^2] + mean^2.
    const double m1 = est::ting_mean(0.5, 0.4, 1.0);
    CHECK(close_rel(est::ting_second_moment(0.5, 0.4, 1.0),
                    rate * refval::kTingSecondMomentJump_05_04 + m1 * m1, 1e-9));

    // Mean and variance both scale linearly in t.
    CHECK(close_rel(est::ting_mean(0.6, 0.8, 7.0), 7.0 * est::ting_mean(0.6, 0.8, 1.0),
                    1e-13));
    CHECK(close_rel(est::ting_variance(0.6, 0.8, 7.0),
                    7.0 * est::ting_variance(0.6, 0.8, 1.0), 1e-13));
    // The tempering keeps the variance positive on the whole domain.
    CHECK(est::ting_variance(0.9, 0.05, 1.0) > 0.0);
}

TEST_CASE("sample_moments and MomentEquations validation") {
    const std::vector<double> v = {1.0, 2.0, 3.0};
    const est::MomentEquations eq = est::sample_moments(v, 2.0);
    CHECK(eq.t == 2.0);
    CHECK(close_rel(eq.m1, 2.0, 1e-15));
    CHECK(close_rel(eq.m2, 14.0 / 3.0, 1e-15));

    const std::vector<double> single = {1.0};
    CHECK_THROWS_AS(est::sample_moments(single, 1.0), validation_error);
    const std::vector<double> negative = {1.0, -2.0};
    CHECK_THROWS_AS(est::sample_moments(negative, 1.0), validation_error);

    est::MomentEquations bad;
    bad.t = 0.0;
    bad.m1 = 1.0;
    bad.m2 = 2.0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad.t = 1.0;
    bad.m1 = -1.0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad.m1 = 2.0;
    bad.m2 = 4.0;  // zero variance
    CHECK_THROWS_AS(bad.validate(), validation_error);
}

TEST_CASE("method of moments recovers exact analytic moments") {
    for (const auto& row : refval::kTingMomentGrid) {
        est::MomentEquations eq;
        eq.t = 1.0;
        eq.m1 = row[2];
        eq.m2 = row[3];
        const est::EstimateReport rep = est::mom_ting_from_moments(eq);
        REQUIRE(rep.params.size() == 2);
        CAPTURE(row[0]);
        CAPTURE(row[1]);
        CHECK(std::fabs(rep.params[0].value - row[0]) < 1e-8);
        CHECK(std::fabs(rep.params[1].value - row[1]) < 1e-8);
        CHECK(rep.diagnostics.branch.rfind("start-", 0) == 0);
        CHECK(rep.diagnostics.residual_norm <= 1e-9);
        CHECK(rep.diagnostics.extra.at("m1") == eq.m1);
    }
}

TEST_CASE("method of moments honors a user-supplied start") {
    est::MomentEquations eq;
    eq.t = 1.0;
    eq.m1 = refval::kTingMomentGrid[5][2];
    eq.m2 = refval::kTingMomentGrid[5][3];
    est::MomOptions opt;
    opt.init = {0.35, 0.45};
    const est::EstimateReport rep = est::mom_ting_from_moments(eq, opt);
    CHECK(std::fabs(rep.params[0].value - refval::kTingMomentGrid[5][0]) < 1e-8);
    CHECK(std::fabs(rep.params[1].value - refval::kTingMomentGrid[5][1]) < 1e-8);

    est::MomOptions bad;
    bad.init = {1.5, 0.45};
    CHECK_THROWS_AS(est::mom_ting_from_moments(eq, bad), validation_error);
    est::MomOptions bad2;
    bad2.max_iter = 0;
    CHECK_THROWS_AS(est::mom_ting_from_moments(eq, bad2), validation_error);
}

TEST_CASE("method of moments on simulated paths lands near the truth") {
    const ModelParams params = ModelParams::ting(0.6, 0.5);
    RngStream rng(508, 1);
    std::vector<double> values(2000);
    for (double& v : values) v = sim::sample_path_stats(params, 1.0, rng).value;
    const est::EstimateReport rep = est::mom_ting(values, 1.0);
    CHECK(std::fabs(rep.params[0].value - 0.6) < 0.1);
    CHECK(std::fabs(rep.params[1].value - 0.5) < 0.15);
    CHECK(rep.n == values.size());
}

TEST_CASE("infeasible moments raise a convergence error") {
    // Mean 5 with variance 1 at t = 1: the tempered family cannot be this
    // concentrated at this mean, so the fit must refuse.
    est::MomentEquations eq;
    eq.t = 1.0;
    eq.m1 = 5.0;
    eq.m2 = 26.0;
    CHECK_THROWS_AS(est::mom_ting_from_moments(eq), convergence_error);
}

TEST_CASE("fractional moment closed form and its contract") {
    // Gamma(1 - p/alpha) / Gamma(1 - p) t^(p/alpha) against quadrature
    // gammas at (alpha, p, t) = (0.5, 0.1, 1000).
    const double want = oracle::gamma_quad(0.8) / oracle::gamma_quad(0.9) *
                        std::pow(1000.0, 0.2);
    CHECK(close_rel(est::fracmom_theoretical(0.5, 0.1, 1000.0), want, 1e-10));

    CHECK_THROWS_AS(est::fracmom_theoretical(0.5, 0.5, 10.0), std::domain_error);
    CHECK_THROWS_AS(est::fracmom_theoretical(0.5, 0.6, 10.0), std::domain_error);
    CHECK_THROWS_AS(est::fracmom_theoretical(1.2, 0.1, 10.0), std::domain_error);
    CHECK_THROWS_AS(est::fracmom_theoretical(0.5, 0.1, 0.0), std::domain_error);
}

TEST_CASE("fractional-moment estimator inverts its own law exactly") {
    // A point mass at v makes the empirical p-moment v^p; choosing v so
    // that v^p equals the theoretical moment at alpha = 0.6 must return
    // alpha = 0.6 up to bisection resolution.
    const double t = 1000.0;
    const double p = 0.05;
    const double target = est::fracmom_theoretical(0.6, p, t);
    const std::vector<double> values(10, std::pow(target, 1.0 / p));
    est::FracMomOptions opt;
    opt.p = p;
    const est::EstimateReport rep =
        est::fracmom_alpha(values, t, opt, Family::InG);
    CHECK(std::fabs(alpha_of(rep) - 0.6) < 1e-9);
    CHECK(rep.diagnostics.extra.at("p") == p);
    CHECK(rep.estimator == est::Estimator::FracMomInG);
}

TEST_CASE("fractional-moment estimator on simulated paths") {
    const double t = 1000.0;
    est::FracMomOptions opt;
    opt.p = 0.05;

    RngStream rng(509, 1);
    std::vector<double> values(250);
    for (double& v : values)
        v = sim::sample_path_stats(ModelParams::ing(0.5), t, rng).value;
    const est::EstimateReport rep = est::fracmom_alpha(values, t, opt, Family::InG);
    CHECK(std::fabs(alpha_of(rep) - 0.5) < 0.05);

    RngStream rng2(509, 2);
    std::vector<double> eps_values(250);
    for (double& v : eps_values)
        v = sim::sample_path_stats(ModelParams::ing_eps(0.5, 0.5), t, rng2).value;
    const est::EstimateReport rep2 =
        est::fracmom_alpha(eps_values, t, opt, Family::InGEps, 0.5);
    CHECK(std::fabs(alpha_of(rep2) - 0.5) < 0.05);
    CHECK(rep2.estimator == est::Estimator::FracMomInGEps);
    CHECK(rep2.eps == 0.5);
}

TEST_CASE("fractional-moment bracket failure halves p before succeeding") {
    // At p = 0.8 the empirical moment of a huge point mass overshoots the
    // alpha -> p endpoint of the law; one halving brings it in range.
    const std::vector<double> values(4, 1e11);
    est::FracMomOptions opt;
    opt.p = 0.8;
    const est::EstimateReport rep =
        est::fracmom_alpha(values, 1000.0, opt, Family::InG);
    CHECK(rep.diagnostics.extra.at("p") == doctest::Approx(0.4));
    CHECK(alpha_of(rep) > 0.4);
    CHECK(alpha_of(rep) < 1.0);
}

TEST_CASE("fractional-moment estimator error paths") {
    const std::vector<double> zeros(8, 0.0);
    est::FracMomOptions opt;
    opt.p = 0.05;
    CHECK_THROWS_AS(est::fracmom_alpha(zeros, 1000.0, opt, Family::InG),
                    convergence_error);

    const std::vector<double> ok(8, 2.0);
    CHECK_THROWS_AS(est::fracmom_alpha(ok, 1.0, opt, Family::InG), validation_error);
    CHECK_THROWS_AS(est::fracmom_alpha(ok, 0.5, opt, Family::InG), validation_error);
    est::FracMomOptions bad_p;
    bad_p.p = 0.0;
    CHECK_THROWS_AS(est::fracmom_alpha(ok, 1000.0, bad_p, Family::InG),
                    validation_error);
    bad_p.p = 1.0;
    CHECK_THROWS_AS(est::fracmom_alpha(ok, 1000.0, bad_p, Family::InG),
                    validation_error);
    CHECK_THROWS_AS(est::fracmom_alpha(ok, 1000.0, opt, Family::TInG),
                    validation_error);
    CHECK_THROWS_AS(est::fracmom_alpha(ok, 1000.0, opt, Family::InG, 0.5),
                    validation_error);
    CHECK_THROWS_AS(est::fracmom_alpha(ok, 1000.0, opt, Family::InGEps),
                    validation_error);
    const std::vector<double> neg = {1.0, -0.5};
    CHECK_THROWS_AS(est::fracmom_alpha(neg, 1000.0, opt, Family::InG),
                    validation_error);
}

TEST_CASE("estimator and variance-model names round-trip") {
    CHECK(std::string(est::estimator_name(est::Estimator::MleInG)) == "mle-ing");
    CHECK(std::string(est::estimator_name(est::Estimator::MomTInG)) == "mom-ting");
    CHECK(est::variance_model_from_name("fisher") == est::VarianceModel::FisherInG);
    CHECK(est::variance_model_from_name("reported") == est::VarianceModel::ReportedInG);
    CHECK(est::variance_model_from_name("reported-eps") ==
          est::VarianceModel::ReportedInGEps);
    CHECK_THROWS_AS(est::variance_model_from_name("bogus"), validation_error);
}
