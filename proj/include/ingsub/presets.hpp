#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ingsub/mc.hpp"

namespace ingsub::presets {

// Built-in reference experiments 1-6:
//   1-4  tempered-family method of moments at (alpha, theta) = (0.1, 0.2),
//        (0.5, 0.4), (0.7, 0.5), (0.9, 0.7), sample sizes 100/500/1000,
//        default horizon t = 1;
//   5    fractional-moment fit of alpha for InG at alpha = 0.3/0.5/0.7/0.9,
//        sample sizes 50/100/250, default horizon t = 1000, p = 0.05;
//   6    the same for the rescaled family, default eps = 0.5.
struct TableOptions {
    std::uint64_t seed = 1;
    std::size_t replications = 100;
    std::optional<double> t;  // overrides the per-table default
    double eps = 0.5;         // table 6 only
    double p = 0.05;          // tables 5-6 only
};

// One config per table cell; cell k uses seed + k so the cells draw
// independent streams. Throws validation_error unless 1 <= which <= 6.
std::vector<mc::McConfig> table_configs(int which, const TableOptions& opt);

}  // namespace ingsub::presets
