#pragma once

#include <cstdint>

#include "ingsub/model.hpp"
#include "ingsub/rng.hpp"

namespace ingsub::sim {

// Largest jump value ever returned; draws whose exact value would
// overflow are clamped here. This perturbs only an astronomically remote
// quantile of the jump law.
inline constexpr double kMaxJump = 1e300;

// Poisson arrival rate of the compound representation:
//   InG      alpha Gamma(alpha)
//   InG-eps  alpha Gamma(alpha) eps^-alpha
//   TInG     alpha Gamma(alpha; theta)
double poisson_rate(const ModelParams& params);

// One jump Z >= 1 with density sin(pi a) / (pi (z-1)^a z): draw
// X ~ Gamma(1-a), Y ~ Gamma(a) and set Z = 1 + X/Y (equivalently
// Z = 1/(1-W) for W ~ Beta(1-a, a), but formed without the cancellation
// that misplaces far-tail mass). Exact (no rejection).
double sample_jump_ing(double alpha, RngStream& rng);

// One jump of the rescaled family: eps times an InG jump, support z >= eps.
double sample_jump_ing_eps(double alpha, double eps, RngStream& rng);

// ln(Z - 1) of an InG jump, evaluated in log space from the two gamma
// draws behind the beta variate. Near alpha = 1 the law puts visible mass
// at gaps below double resolution (stored jumps read as exactly 1, log of
// zero), and the opposite tail can overflow to the clamp; this path keeps
// both ends finite, so score statistics stay well defined.
double sample_log_jump_gap_ing(double alpha, RngStream& rng);

// One tempered jump by rejection: propose from the InG jump law, accept
// with probability e^(-theta (z-1)). Overall acceptance rate is
// e^theta Gamma(a; theta) / Gamma(a). Throws convergence_error after
// max_rounds consecutive rejections.
double sample_jump_ting(double alpha, double theta, RngStream& rng,
                        std::uint64_t max_rounds = 1000000);

struct TingDraw {
    double value = 0.0;
    std::uint64_t proposals = 0;
};

// Same sampler, additionally reporting how many proposals were consumed.
TingDraw sample_jump_ting_counted(double alpha, double theta, RngStream& rng,
                                  std::uint64_t max_rounds = 1000000);

// Dispatch on params.family.
double sample_jump(const ModelParams& params, RngStream& rng);

struct PathStats {
    double value = 0.0;
    std::uint64_t jump_count = 0;
};

// Subordinator value at horizon t: N ~ Poisson(rate * t) jumps summed in
// generation order. sample_path keeps the jumps; sample_path_stats draws
// the identical sequence without storing them, so for equal stream state
// both return bitwise-equal values.
PathSample sample_path(const ModelParams& params, double t, RngStream& rng);
PathStats sample_path_stats(const ModelParams& params, double t, RngStream& rng);

// CDF of the InG jump law: F(z) = I_w(1-a, a) with w = 1 - 1/z, z >= 1.
// The rescaled family satisfies F_eps(z) = jump_cdf_ing(a, z/eps).
double jump_cdf_ing(double alpha, double z);

}  // namespace ingsub::sim
