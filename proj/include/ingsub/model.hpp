#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ingsub {

// The three subordinator families handled by this toolkit:
//   InG     driftless subordinator with jump density
//           sin(pi a) / (pi (z-1)^a z) on z >= 1 (infinite-mean jumps),
//   InGEps  the same law with jumps rescaled by epsilon > 0 (support z >= eps),
//   TInG    the exponentially tempered variant e^(-theta z) (z-1)^(-a) z^(-1)
//           / (Gamma(1-a) Gamma(a; theta)) on z >= 1, all moments finite.
enum class Family { InG, InGEps, TInG };

const char* family_name(Family f);
Family family_from_name(std::string_view name);

struct ModelParams {
    Family family = Family::InG;
    double alpha = 0.5;
    std::optional<double> eps;    // present iff family == InGEps
    std::optional<double> theta;  // present iff family == TInG

    static ModelParams ing(double alpha);
    static ModelParams ing_eps(double alpha, double eps);
    static ModelParams ting(double alpha, double theta);

    // Throws validation_error unless alpha is in (0, 1) and eps/theta are
    // present exactly when the family requires them (and positive).
    // alpha = 1 is rejected: the jump law degenerates to a point mass at 1
    // and the process collapses to a unit-rate Poisson counter.
    void validate() const;
};

struct PathSample {
    double t = 0.0;
    std::uint64_t jump_count = 0;
    std::vector<double> jumps;  // in generation order
    double value = 0.0;         // sum of jumps, accumulated in order
};

}  // namespace ingsub
