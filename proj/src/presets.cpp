#include "ingsub/presets.hpp"

#include <string>

#include "ingsub/errors.hpp"

namespace ingsub::presets {

std::vector<mc::McConfig> table_configs(int which, const TableOptions& opt) {
    if (which < 1 || which > 6)
        throw validation_error("table preset must be 1..6");
    std::vector<mc::McConfig> configs;
    std::uint64_t cell = 0;
    const std::string label = "table" + std::to_string(which);

    if (which <= 4) {
        static constexpr double kPoints[4][2] = {
            {0.1, 0.2}, {0.5, 0.4}, {0.7, 0.5}, {0.9, 0.7}};
        const double alpha = kPoints[which - 1][0];
        const double theta = kPoints[which - 1][1];
        for (std::size_t n : {100u, 500u, 1000u}) {
            mc::McConfig cfg;
            cfg.params = ModelParams::ting(alpha, theta);
            cfg.t = opt.t.value_or(1.0);
            cfg.sample_size = n;
            cfg.replications = opt.replications;
            cfg.estimator.type = est::Estimator::MomTInG;
            cfg.seed = opt.seed + cell++;
            cfg.label = label;
            configs.push_back(cfg);
        }
        return configs;
    }

    const bool rescaled = (which == 6);
    for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
        for (std::size_t n : {50u, 100u, 250u}) {
            mc::McConfig cfg;
            cfg.params = rescaled ? ModelParams::ing_eps(alpha, opt.eps)
                                  : ModelParams::ing(alpha);
            cfg.t = opt.t.value_or(1000.0);
            cfg.sample_size = n;
            cfg.replications = opt.replications;
            cfg.estimator.type = rescaled ? est::Estimator::FracMomInGEps
                                          : est::Estimator::FracMomInG;
            cfg.estimator.p = opt.p;
            cfg.seed = opt.seed + cell++;
            cfg.label = label;
            cfg.row_label = "alpha=" + std::to_string(alpha).substr(0, 3);
            configs.push_back(cfg);
        }
    }
    return configs;
}

}  // namespace ingsub::presets
