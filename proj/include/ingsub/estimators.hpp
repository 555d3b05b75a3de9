#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ingsub/model.hpp"

namespace ingsub::est {

enum class Estimator { MleInG, MleInGEps, MomTInG, FracMomInG, FracMomInGEps };

const char* estimator_name(Estimator e);

// Two published closed forms exist for the asymptotic variance of the
// stability-index MLE and they disagree except at alpha = 1/2:
//   FisherInG       sigma^2 = sin^2(pi a) / pi^2, the inverse of the Fisher
//                   information pi^2 csc^2(pi a) carried by one jump,
//   ReportedInG     sigma^2 = 2 sin(pi a) / (pi^2 (3 + cos(2 pi a))),
//   ReportedInGEps  sigma^2 = 1 / (pi^2 + 2 pi^2 cot^2(pi a)
//                              + 2 pi cot(pi a) ln eps + ln^2 eps).
// FisherInG is the default; the Monte Carlo score variance adjudicates
// between them in the test suite. Reports built with any model also carry
// both InG values in their diagnostics so the discrepancy stays visible.
enum class VarianceModel { FisherInG, ReportedInG, ReportedInGEps };

const char* variance_model_name(VarianceModel m);
VarianceModel variance_model_from_name(std::string_view name);

struct Diagnostics {
    int iterations = 0;
    double residual_norm = 0.0;
    std::string branch;
    std::vector<std::string> notes;
    std::map<std::string, double> extra;
};

struct ParamEstimate {
    std::string name;
    double value = 0.0;
    std::optional<double> std_error;
    std::optional<std::array<double, 2>> ci;
};

struct EstimateReport {
    Estimator estimator = Estimator::MleInG;
    std::vector<ParamEstimate> params;
    std::size_t n = 0;
    double ci_level = 0.0;  // 0 until a confidence interval is attached
    std::optional<double> eps;
    Diagnostics diagnostics;
};

// Closed-form MLE of alpha from raw InG jumps (all z > 1):
//   S = sum ln(z_i - 1),  A = arctan(n pi / S),
//   alpha = A/pi if A > 0, (pi + A)/pi if A < 0, 1/2 if S = 0.
// A jump exactly equal to 1 makes the likelihood unbounded and raises
// validation_error; z < 1 is a domain error.
EstimateReport mle_alpha_ing(std::span<const double> jumps);

// Same estimator for the rescaled family, using the likelihood-consistent
// statistic S = sum ln((z_i - eps)/eps); at eps = 1 this reduces exactly
// to mle_alpha_ing, and rescaling data and eps by a common factor leaves
// the estimate unchanged.
EstimateReport mle_alpha_ing_eps(std::span<const double> jumps, double eps);

// Attach a normal-theory confidence interval alpha_hat -+ q sigma/sqrt(n)
// at the given level, with sigma^2 from the chosen variance model.
// Endpoints are clipped to [0, 1]. ReportedInGEps requires rep.eps.
EstimateReport mle_asymptotic_ci(EstimateReport rep, double level,
                                 VarianceModel model = VarianceModel::FisherInG);

// Score of one InG jump at alpha: pi cot(pi alpha) - ln(z - 1). Mean zero
// under the model; variance pi^2 csc^2(pi alpha).
double score_ing(double alpha, double z);

// Tempered-family moment targets for a horizon t.
struct MomentEquations {
    double t = 1.0;
    double m1 = 0.0;  // mean of the path value
    double m2 = 0.0;  // raw second moment

    void validate() const;  // t > 0, m1 > 0, m2 > m1^2
};

MomentEquations sample_moments(std::span<const double> values, double t);

// Model moments of the tempered subordinator at horizon t:
//   mean     t a theta^(a-1) e^-theta
//   variance t a theta^(a-2) e^-theta (theta + 1 - a)
double ting_mean(double alpha, double theta, double t);
double ting_variance(double alpha, double theta, double t);
double ting_second_moment(double alpha, double theta, double t);

struct MomOptions {
    std::optional<std::pair<double, double>> init;  // prepended to the start list
    int max_iter = 10000;        // Nelder-Mead budget per start
    double residual_tol = 1e-10;  // converged when hypot(r1, r2) drops below
    double step_tol = 1e-12;      // or the simplex collapses to this size
    double feasibility_floor = 1e-3;  // best residual above this is infeasible
};

// Method-of-moments fit of (alpha, theta) by minimizing the squared
// relative residuals of mean and second moment, in (logit alpha, ln theta)
// coordinates, from five deterministic starts. Throws convergence_error
// when every start exhausts its budget, or when the best residual exceeds
// the feasibility floor (moments incompatible with the model).
EstimateReport mom_ting_from_moments(const MomentEquations& eq, const MomOptions& opt = {});
EstimateReport mom_ting(std::span<const double> values, double t, const MomOptions& opt = {});

// Theoretical fractional moment of the path value at horizon t:
//   E[S_t^p] = Gamma(1 - p/alpha) / Gamma(1 - p) * t^(p/alpha),  p < alpha.
double fracmom_theoretical(double alpha, double p, double t);

struct FracMomOptions {
    double p = 0.05;
    int max_p_halvings = 4;
};

// Estimate alpha by matching the empirical p-th fractional moment of path
// values to the law above, solving by bisection over alpha (the right side
// is strictly decreasing in alpha for t > 1). If the bracket fails, p is
// halved and the moment recomputed, up to max_p_halvings times; after that
// a convergence_error reports the final bracket. family selects the
// metadata tag (InG or InGEps); the asymptotic law is the same.
EstimateReport fracmom_alpha(std::span<const double> values, double t,
                             const FracMomOptions& opt, Family family,
                             std::optional<double> eps = std::nullopt);

}  // namespace ingsub::est
