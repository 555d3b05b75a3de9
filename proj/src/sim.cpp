#include "ingsub/sim.hpp"

#include <cmath>
#include <string>

#include "ingsub/errors.hpp"
#include "ingsub/specfun.hpp"

namespace ingsub::sim {

double poisson_rate(const ModelParams& params) {
    params.validate();
    const double a = params.alpha;
    switch (params.family) {
        case Family::InG:
            return a * std::exp(specfun::log_gamma(a));
        case Family::InGEps:
            return a * std::exp(specfun::log_gamma(a) - a * std::log(*params.eps));
        case Family::TInG:
            return a * specfun::upper_inc_gamma(a, *params.theta);
    }
    return 0.0;
}

double sample_jump_ing(double alpha, RngStream& rng) {
    // Z - 1 = X/Y for X ~ Gamma(1-a), Y ~ Gamma(a), the ratio behind a
    // Beta(1-a, a) variate. Forming W = X/(X+Y) first and inverting
    // 1/(1-W) rounds W to 1 with probability ~(2^-53)^a, which would dump
    // that mass onto the clamp value; the plain ratio spreads it over the
    // genuine far tail, where the clamp is truly a ~1e-90 event.
    double x = 0.0, y = 0.0;
    do {
        x = rng.gamma_variate(1.0 - alpha);
        y = rng.gamma_variate(alpha);
    } while (x == 0.0 || y == 0.0);
    const double z = 1.0 + x / y;
    if (!(z <= kMaxJump)) return kMaxJump;
    return z;
}

double sample_jump_ing_eps(double alpha, double eps, RngStream& rng) {
    return eps * sample_jump_ing(alpha, rng);
}

double sample_log_jump_gap_ing(double alpha, RngStream& rng) {
    // With W = X/(X+Y) for X ~ Gamma(1-a), Y ~ Gamma(a), the gap is
    // Z - 1 = W/(1-W) = X/Y, so ln(Z-1) = ln X - ln Y. Both logs stay
    // finite even where the ratio itself would round to zero (gap below
    // double resolution) or overflow (Y far smaller than X), which the
    // stored-jump route cannot avoid at either end of the law.
    double x = 0.0, y = 0.0;
    do {
        x = rng.gamma_variate(1.0 - alpha);
        y = rng.gamma_variate(alpha);
    } while (x == 0.0 || y == 0.0);
    return std::log(x) - std::log(y);
}

TingDraw sample_jump_ting_counted(double alpha, double theta, RngStream& rng,
                                  std::uint64_t max_rounds) {
    TingDraw d;
    while (d.proposals < max_rounds) {
        const double z = sample_jump_ing(alpha, rng);
        ++d.proposals;
        if (rng.uniform01() <= std::exp(-theta * (z - 1.0))) {
            d.value = z;
            return d;
        }
    }
    throw convergence_error("sample_jump_ting: no acceptance after " +
                            std::to_string(max_rounds) + " proposals at alpha=" +
                            std::to_string(alpha) + " theta=" + std::to_string(theta));
}

double sample_jump_ting(double alpha, double theta, RngStream& rng,
                        std::uint64_t max_rounds) {
    return sample_jump_ting_counted(alpha, theta, rng, max_rounds).value;
}

double sample_jump(const ModelParams& params, RngStream& rng) {
    switch (params.family) {
        case Family::InG:
            return sample_jump_ing(params.alpha, rng);
        case Family::InGEps:
            return sample_jump_ing_eps(params.alpha, *params.eps, rng);
        case Family::TInG:
            return sample_jump_ting(params.alpha, *params.theta, rng);
    }
    return 0.0;
}

namespace {

void require_horizon(double t) {
    if (!std::isfinite(t) || !(t > 0.0))
        throw validation_error("horizon t must be positive and finite");
}

}  // namespace

PathSample sample_path(const ModelParams& params, double t, RngStream& rng) {
    require_horizon(t);
    const double rate = poisson_rate(params);
    PathSample path;
    path.t = t;
    path.jump_count = rng.poisson(rate * t);
    path.jumps.reserve(path.jump_count);
    for (std::uint64_t i = 0; i < path.jump_count; ++i) {
        path.jumps.push_back(sample_jump(params, rng));
        path.value += path.jumps.back();
    }
    return path;
}

PathStats sample_path_stats(const ModelParams& params, double t, RngStream& rng) {
    require_horizon(t);
    const double rate = poisson_rate(params);
    PathStats stats;
    stats.jump_count = rng.poisson(rate * t);
    for (std::uint64_t i = 0; i < stats.jump_count; ++i)
        stats.value += sample_jump(params, rng);
    return stats;
}

double jump_cdf_ing(double alpha, double z) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("jump_cdf_ing: alpha must lie in (0, 1)");
    if (std::isnan(z))
        throw std::domain_error("jump_cdf_ing: z is NaN");
    if (z <= 1.0) return 0.0;
    if (std::isinf(z)) return 1.0;
    return specfun::reg_inc_beta(1.0 - alpha, alpha, 1.0 - 1.0 / z);
}

}  // namespace ingsub::sim
