#include "ingsub/estimators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "ingsub/errors.hpp"
#include "ingsub/specfun.hpp"

namespace ingsub::est {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

// Shared arctangent branch logic of the closed-form MLE.
EstimateReport mle_from_statistic(double s, std::size_t n, Estimator tag) {
    EstimateReport rep;
    rep.estimator = tag;
    rep.n = n;
    double alpha;
    if (s == 0.0) {
        alpha = 0.5;
        rep.diagnostics.branch = "s-zero";
    } else {
        const double a = std::atan(static_cast<double>(n) * kPi / s);
        if (a > 0.0) {
            alpha = a / kPi;
            rep.diagnostics.branch = "arctan-positive";
        } else {
            alpha = (kPi + a) / kPi;
            rep.diagnostics.branch = "arctan-negative";
        }
    }
    // The closed form sits at a maximum: the second derivative of the
    // log-likelihood, -n pi^2 csc^2(pi alpha), is negative wherever defined.
    assert(-static_cast<double>(n) * kPi * kPi /
               (std::sin(kPi * alpha) * std::sin(kPi * alpha)) < 0.0);
    rep.params.push_back({"alpha", alpha, std::nullopt, std::nullopt});
    rep.diagnostics.extra["s_statistic"] = s;
    return rep;
}

double sigma2_fisher(double a) {
    const double s = std::sin(kPi * a);
    return s * s / (kPi * kPi);
}

double sigma2_reported_ing(double a) {
    return 2.0 * std::sin(kPi * a) / (kPi * kPi * (3.0 + std::cos(2.0 * kPi * a)));
}

double sigma2_reported_ing_eps(double a, double eps) {
    const double cot = std::cos(kPi * a) / std::sin(kPi * a);
    const double le = std::log(eps);
    return 1.0 / (kPi * kPi + 2.0 * kPi * kPi * cot * cot + 2.0 * kPi * cot * le + le * le);
}

struct NmPoint {
    std::array<double, 2> u;
    double f;
};

// Squared relative moment residuals in (logit alpha, ln theta) coordinates.
// Parameter values that overflow the model moments get a large penalty so
// the simplex backs away from them.
double mom_objective(const std::array<double, 2>& u, const MomentEquations& eq) {
    const double alpha = 1.0 / (1.0 + std::exp(-u[0]));
    const double theta = std::exp(u[1]);
    if (!(alpha > 0.0) || !(alpha < 1.0) || !(theta > 0.0) || !std::isfinite(theta))
        return 1e100;
    const double m1 = ting_mean(alpha, theta, eq.t);
    const double m2 = ting_second_moment(alpha, theta, eq.t);
    if (!std::isfinite(m1) || !std::isfinite(m2)) return 1e100;
    const double r1 = m1 / eq.m1 - 1.0;
    const double r2 = m2 / eq.m2 - 1.0;
    const double f = r1 * r1 + r2 * r2;
    return std::isfinite(f) ? f : 1e100;
}

struct NmResult {
    std::array<double, 2> u;
    double f = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

// Standard Nelder-Mead on two variables (reflection 1, expansion 2,
// contraction 1/2, shrink 1/2).
NmResult nelder_mead(const std::array<double, 2>& start, const MomentEquations& eq,
                     const MomOptions& opt) {
    const double h = 0.25;
    std::array<NmPoint, 3> sx;
    sx[0] = {start, mom_objective(start, eq)};
    sx[1] = {{start[0] + h, start[1]}, 0.0};
    sx[1].f = mom_objective(sx[1].u, eq);
    sx[2] = {{start[0], start[1] + h}, 0.0};
    sx[2].f = mom_objective(sx[2].u, eq);

    NmResult res;
    for (int it = 0; it < opt.max_iter; ++it) {
        std::sort(sx.begin(), sx.end(),
                  [](const NmPoint& a, const NmPoint& b) { return a.f < b.f; });
        res.u = sx[0].u;
        res.f = sx[0].f;
        res.iterations = it;
        const double size = std::max(
            std::hypot(sx[1].u[0] - sx[0].u[0], sx[1].u[1] - sx[0].u[1]),
            std::hypot(sx[2].u[0] - sx[0].u[0], sx[2].u[1] - sx[0].u[1]));
        if (std::sqrt(sx[0].f) < opt.residual_tol || size < opt.step_tol) {
            res.converged = true;
            return res;
        }
        const std::array<double, 2> centroid = {(sx[0].u[0] + sx[1].u[0]) / 2.0,
                                                (sx[0].u[1] + sx[1].u[1]) / 2.0};
        auto blend = [&](double coef) {
            return std::array<double, 2>{centroid[0] + coef * (sx[2].u[0] - centroid[0]),
                                         centroid[1] + coef * (sx[2].u[1] - centroid[1])};
        };
        const auto refl = blend(-1.0);
        const double f_refl = mom_objective(refl, eq);
        if (f_refl < sx[0].f) {
            const auto exp_pt = blend(-2.0);
            const double f_exp = mom_objective(exp_pt, eq);
            sx[2] = (f_exp < f_refl) ? NmPoint{exp_pt, f_exp} : NmPoint{refl, f_refl};
            continue;
        }
        if (f_refl < sx[1].f) {
            sx[2] = {refl, f_refl};
            continue;
        }
        const auto contr = (f_refl < sx[2].f) ? blend(-0.5) : blend(0.5);
        const double f_contr = mom_objective(contr, eq);
        if (f_contr < std::min(f_refl, sx[2].f)) {
            sx[2] = {contr, f_contr};
            continue;
        }
        for (int i = 1; i < 3; ++i) {
            sx[i].u[0] = sx[0].u[0] + 0.5 * (sx[i].u[0] - sx[0].u[0]);
            sx[i].u[1] = sx[0].u[1] + 0.5 * (sx[i].u[1] - sx[0].u[1]);
            sx[i].f = mom_objective(sx[i].u, eq);
        }
    }
    res.iterations = opt.max_iter;
    return res;
}

}  // namespace

const char* estimator_name(Estimator e) {
    switch (e) {
        case Estimator::MleInG: return "mle-ing";
        case Estimator::MleInGEps: return "mle-ing-eps";
        case Estimator::MomTInG: return "mom-ting";
        case Estimator::FracMomInG: return "fracmom-ing";
        case Estimator::FracMomInGEps: return "fracmom-ing-eps";
    }
    return "?";
}

const char* variance_model_name(VarianceModel m) {
    switch (m) {
        case VarianceModel::FisherInG: return "fisher";
        case VarianceModel::ReportedInG: return "reported";
        case VarianceModel::ReportedInGEps: return "reported-eps";
    }
    return "?";
}

VarianceModel variance_model_from_name(std::string_view name) {
    if (name == "fisher") return VarianceModel::FisherInG;
    if (name == "reported") return VarianceModel::ReportedInG;
    if (name == "reported-eps") return VarianceModel::ReportedInGEps;
    throw validation_error("unknown variance model '" + std::string(name) +
                           "' (expected fisher, reported, or reported-eps)");
}

EstimateReport mle_alpha_ing(std::span<const double> jumps) {
    if (jumps.empty())
        throw validation_error("mle_alpha_ing: need at least one jump");
    double s = 0.0;
    for (double z : jumps) {
        if (std::isnan(z) || z < 1.0)
            throw std::domain_error("mle_alpha_ing: jump below the support minimum 1");
        if (z == 1.0)
            throw validation_error(
                "mle_alpha_ing: degenerate jump exactly 1; the log-likelihood is unbounded");
        s += std::log(z - 1.0);
    }
    return mle_from_statistic(s, jumps.size(), Estimator::MleInG);
}

EstimateReport mle_alpha_ing_eps(std::span<const double> jumps, double eps) {
    if (!std::isfinite(eps) || !(eps > 0.0))
        throw validation_error("mle_alpha_ing_eps: eps must be positive and finite");
    if (jumps.empty())
        throw validation_error("mle_alpha_ing_eps: need at least one jump");
    double s = 0.0;
    for (double z : jumps) {
        if (std::isnan(z) || z < eps)
            throw std::domain_error("mle_alpha_ing_eps: jump below the support minimum eps");
        if (z == eps)
            throw validation_error(
                "mle_alpha_ing_eps: degenerate jump exactly eps; the log-likelihood is unbounded");
        s += std::log((z - eps) / eps);
    }
    EstimateReport rep = mle_from_statistic(s, jumps.size(), Estimator::MleInGEps);
    rep.eps = eps;
    return rep;
}

EstimateReport mle_asymptotic_ci(EstimateReport rep, double level, VarianceModel model) {
    if (!(level > 0.0) || !(level < 1.0))
        throw validation_error("mle_asymptotic_ci: level must lie in (0, 1)");
    if (rep.estimator != Estimator::MleInG && rep.estimator != Estimator::MleInGEps)
        throw validation_error("mle_asymptotic_ci: report does not come from an MLE");
    if (rep.params.empty() || rep.n == 0)
        throw validation_error("mle_asymptotic_ci: malformed report");
    const double a = rep.params[0].value;
    double sigma2;
    switch (model) {
        case VarianceModel::FisherInG:
            sigma2 = sigma2_fisher(a);
            break;
        case VarianceModel::ReportedInG:
            sigma2 = sigma2_reported_ing(a);
            break;
        case VarianceModel::ReportedInGEps:
            if (!rep.eps)
                throw validation_error("mle_asymptotic_ci: reported-eps needs the report's eps");
            sigma2 = sigma2_reported_ing_eps(a, *rep.eps);
            break;
        default:
            throw validation_error("mle_asymptotic_ci: unknown variance model");
    }
    const double se = std::sqrt(sigma2 / static_cast<double>(rep.n));
    const double q = specfun::normal_quantile(0.5 + level / 2.0);
    rep.params[0].std_error = se;
    rep.params[0].ci = {std::max(0.0, a - q * se), std::min(1.0, a + q * se)};
    rep.ci_level = level;
    rep.diagnostics.extra["sigma2_fisher"] = sigma2_fisher(a);
    rep.diagnostics.extra["sigma2_reported"] = sigma2_reported_ing(a);
    rep.diagnostics.extra["sigma2_used"] = sigma2;
    if (std::fabs(a - 0.5) > 1e-9)
        rep.diagnostics.notes.push_back(
            "fisher and reported variance models disagree away from alpha = 1/2; "
            "interval uses " + std::string(variance_model_name(model)));
    if (rep.n < 30)
        rep.diagnostics.notes.push_back("n < 30: the asymptotic interval is unreliable");
    return rep;
}

double score_ing(double alpha, double z) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("score_ing: alpha must lie in (0, 1)");
    if (!(z > 1.0))
        throw std::domain_error("score_ing: z must exceed 1");
    return kPi * std::cos(kPi * alpha) / std::sin(kPi * alpha) - std::log(z - 1.0);
}

void MomentEquations::validate() const {
    if (!std::isfinite(t) || !(t > 0.0))
        throw validation_error("MomentEquations: t must be positive and finite");
    if (!std::isfinite(m1) || !(m1 > 0.0))
        throw validation_error("MomentEquations: m1 must be positive and finite");
    if (!std::isfinite(m2) || !(m2 > m1 * m1))
        throw validation_error("MomentEquations: m2 must exceed m1^2 (positive variance)");
}

MomentEquations sample_moments(std::span<const double> values, double t) {
    if (values.size() < 2)
        throw validation_error("sample_moments: need at least two path values");
    MomentEquations eq;
    eq.t = t;
    double s1 = 0.0, s2 = 0.0;
    for (double v : values) {
        if (std::isnan(v) || v < 0.0)
            throw validation_error("sample_moments: path values must be nonnegative");
        s1 += v;
        s2 += v * v;
    }
    eq.m1 = s1 / static_cast<double>(values.size());
    eq.m2 = s2 / static_cast<double>(values.size());
    eq.validate();
    return eq;
}

double ting_mean(double alpha, double theta, double t) {
    return t * alpha * std::exp((alpha - 1.0) * std::log(theta) - theta);
}

double ting_variance(double alpha, double theta, double t) {
    return t * alpha * std::exp((alpha - 2.0) * std::log(theta) - theta) *
           (theta + 1.0 - alpha);
}

double ting_second_moment(double alpha, double theta, double t) {
    const double m = ting_mean(alpha, theta, t);
    return ting_variance(alpha, theta, t) + m * m;
}

EstimateReport mom_ting_from_moments(const MomentEquations& eq, const MomOptions& opt) {
    eq.validate();
    if (opt.max_iter < 1)
        throw validation_error("mom_ting: max_iter must be positive");

    std::vector<std::array<double, 2>> starts;
    auto to_u = [](double alpha, double theta) {
        return std::array<double, 2>{std::log(alpha / (1.0 - alpha)), std::log(theta)};
    };
    if (opt.init) {
        const auto [a0, t0] = *opt.init;
        if (!(a0 > 0.0) || !(a0 < 1.0) || !(t0 > 0.0))
            throw validation_error("mom_ting: init must satisfy 0 < alpha < 1, theta > 0");
        starts.push_back(to_u(a0, t0));
    }
    for (double a0 : {0.2, 0.5, 0.8})
        for (double t0 : {0.3, 0.7})
            if (starts.size() < (opt.init ? 6u : 5u)) starts.push_back(to_u(a0, t0));

    NmResult best;
    int best_start = -1;
    bool any_converged = false;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const NmResult r = nelder_mead(starts[i], eq, opt);
        any_converged = any_converged || r.converged;
        // Prefer converged runs, then lower residual, then earlier start.
        const bool better = (r.converged && !best.converged) ||
                            (r.converged == best.converged && r.f < best.f);
        if (best_start < 0 || better) {
            best = r;
            best_start = static_cast<int>(i);
        }
    }
    if (!any_converged)
        throw convergence_error("mom_ting: no start converged within " +
                                std::to_string(opt.max_iter) + " iterations");
    const double residual = std::sqrt(best.f);
    if (residual > opt.feasibility_floor)
        throw convergence_error("mom_ting: sample moments are infeasible for the model "
                                "(best residual " + fmt(residual) + ")");

    EstimateReport rep;
    rep.estimator = Estimator::MomTInG;
    const double alpha = 1.0 / (1.0 + std::exp(-best.u[0]));
    const double theta = std::exp(best.u[1]);
    rep.params.push_back({"alpha", alpha, std::nullopt, std::nullopt});
    rep.params.push_back({"theta", theta, std::nullopt, std::nullopt});
    rep.diagnostics.iterations = best.iterations;
    rep.diagnostics.residual_norm = residual;
    rep.diagnostics.branch = "start-" + std::to_string(best_start);
    rep.diagnostics.extra["m1"] = eq.m1;
    rep.diagnostics.extra["m2"] = eq.m2;
    return rep;
}

EstimateReport mom_ting(std::span<const double> values, double t, const MomOptions& opt) {
    EstimateReport rep = mom_ting_from_moments(sample_moments(values, t), opt);
    rep.n = values.size();
    return rep;
}

double fracmom_theoretical(double alpha, double p, double t) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("fracmom_theoretical: alpha must lie in (0, 1)");
    if (!(p > 0.0) || !(p < 1.0) || p >= alpha)
        throw std::domain_error("fracmom_theoretical: need 0 < p < alpha");
    if (!(t > 0.0))
        throw std::domain_error("fracmom_theoretical: t must be positive");
    return std::exp(specfun::log_gamma(1.0 - p / alpha) - specfun::log_gamma(1.0 - p) +
                    (p / alpha) * std::log(t));
}

EstimateReport fracmom_alpha(std::span<const double> values, double t,
                             const FracMomOptions& opt, Family family,
                             std::optional<double> eps) {
    if (values.empty())
        throw validation_error("fracmom_alpha: need at least one path value");
    if (!(opt.p > 0.0) || !(opt.p < 1.0))
        throw validation_error("fracmom_alpha: p must lie in (0, 1)");
    if (!std::isfinite(t) || !(t > 1.0))
        throw validation_error("fracmom_alpha: t must exceed 1 (the moment law needs t^(p/alpha) "
                               "monotone in alpha)");
    if (family != Family::InG && family != Family::InGEps)
        throw validation_error("fracmom_alpha: family must be ing or ing-eps");
    if ((family == Family::InGEps) != eps.has_value())
        throw validation_error("fracmom_alpha: eps must be given exactly for ing-eps");
    for (double v : values)
        if (std::isnan(v) || v < 0.0)
            throw validation_error("fracmom_alpha: path values must be nonnegative");

    EstimateReport rep;
    rep.estimator = (family == Family::InG) ? Estimator::FracMomInG : Estimator::FracMomInGEps;
    rep.n = values.size();
    rep.eps = eps;

    double p = opt.p;
    double m_hat = 0.0, g_lo = 0.0, g_hi = 0.0;
    for (int halving = 0; halving <= opt.max_p_halvings; ++halving) {
        m_hat = 0.0;
        for (double v : values) m_hat += std::pow(v, p);  // zero paths contribute 0
        m_hat /= static_cast<double>(values.size());

        const double lo = p + 1e-6;
        const double hi = 1.0 - 1e-9;
        auto g = [&](double alpha) { return fracmom_theoretical(alpha, p, t); };
        g_lo = g(lo);
        g_hi = g(hi);
        // g is strictly decreasing in alpha for t > 1.
        if (m_hat <= g_lo && m_hat >= g_hi) {
            double a = lo, b = hi;
            int iter = 0;
            while (b - a > 1e-13 && iter < 200) {
                const double mid = 0.5 * (a + b);
                if (g(mid) >= m_hat)
                    a = mid;
                else
                    b = mid;
                ++iter;
            }
            const double alpha = 0.5 * (a + b);
            rep.params.push_back({"alpha", alpha, std::nullopt, std::nullopt});
            rep.diagnostics.iterations = iter;
            rep.diagnostics.residual_norm =
                std::fabs(fracmom_theoretical(alpha, p, t) - m_hat);
            rep.diagnostics.branch = "p=" + fmt(p);
            rep.diagnostics.extra["p"] = p;
            rep.diagnostics.extra["moment"] = m_hat;
            const double rate =
                alpha * std::exp(specfun::log_gamma(alpha) -
                                 (eps ? alpha * std::log(*eps) : 0.0));
            if (rate * t < 10.0)
                rep.diagnostics.notes.push_back(
                    "expected jump count under the fit is below 10; the large-t moment "
                    "law may be a poor approximation");
            return rep;
        }
        p /= 2.0;
    }
    throw convergence_error("fracmom_alpha: no bracket after " +
                            std::to_string(opt.max_p_halvings) +
                            " halvings of p (moment " + fmt(m_hat) + " outside [" +
                            fmt(g_hi) + ", " + fmt(g_lo) + "] at p=" + fmt(p * 2.0) + ")");
}

}  // namespace ingsub::est
