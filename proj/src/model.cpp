#include "ingsub/model.hpp"

#include <cmath>

#include "ingsub/errors.hpp"

namespace ingsub {

const char* family_name(Family f) {
    switch (f) {
        case Family::InG: return "ing";
        case Family::InGEps: return "ing-eps";
        case Family::TInG: return "ting";
    }
    return "?";
}

Family family_from_name(std::string_view name) {
    if (name == "ing") return Family::InG;
    if (name == "ing-eps" || name == "ing_eps") return Family::InGEps;
    if (name == "ting") return Family::TInG;
    throw validation_error("unknown family '" + std::string(name) +
                           "' (expected ing, ing-eps, or ting)");
}

ModelParams ModelParams::ing(double alpha) {
    ModelParams p;
    p.family = Family::InG;
    p.alpha = alpha;
    p.validate();
    return p;
}

ModelParams ModelParams::ing_eps(double alpha, double eps) {
    ModelParams p;
    p.family = Family::InGEps;
    p.alpha = alpha;
    p.eps = eps;
    p.validate();
    return p;
}

ModelParams ModelParams::ting(double alpha, double theta) {
    ModelParams p;
    p.family = Family::TInG;
    p.alpha = alpha;
    p.theta = theta;
    p.validate();
    return p;
}

void ModelParams::validate() const {
    if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha < 1.0)) {
        if (alpha == 1.0)
            throw validation_error(
                "alpha = 1 degenerates to a unit-jump Poisson process and is not supported");
        throw validation_error("alpha must lie in the open interval (0, 1)");
    }
    switch (family) {
        case Family::InG:
            if (eps || theta)
                throw validation_error("ing takes neither eps nor theta");
            break;
        case Family::InGEps:
            if (!eps)
                throw validation_error("ing-eps requires eps");
            if (theta)
                throw validation_error("ing-eps takes no theta");
            if (!std::isfinite(*eps) || !(*eps > 0.0))
                throw validation_error("eps must be positive and finite");
            break;
        case Family::TInG:
            if (!theta)
                throw validation_error("ting requires theta");
            if (eps)
                throw validation_error("ting takes no eps");
            if (!std::isfinite(*theta) || !(*theta > 0.0))
                throw validation_error("theta must be positive and finite");
            break;
    }
}

}  // namespace ingsub
