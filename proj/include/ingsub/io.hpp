#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ingsub/estimators.hpp"
#include "ingsub/mc.hpp"
#include "ingsub/model.hpp"

namespace ingsub::io {

// One simulated record: the path value (or single jump) drawn from
// RngStream(seed, stream).
struct SimRow {
    std::uint64_t stream = 0;
    double value = 0.0;
    std::uint64_t jump_count = 0;
};

inline constexpr const char* kSimCsvHeader =
    "family,alpha,eps,theta,t,seed,stream,value,jump_count";

// Writes the fixed-header CSV above, one row per record, numbers at full
// %.17g precision. eps/theta columns are empty when the family lacks them.
void write_sim_csv(std::ostream& out, const ModelParams& params, double t,
                   std::uint64_t seed, std::span<const SimRow> rows);

struct SimData {
    std::vector<double> values;
    std::optional<double> t;  // taken from the first row when the column exists
};

// Reads any CSV with a header naming a `value` column (the format written
// by write_sim_csv included); a `t` column is picked up when present.
// Throws io_error on missing files or malformed numbers.
SimData read_values_csv(const std::string& path);

std::string estimate_report_json(const est::EstimateReport& rep);

// Parses one McConfig object or an array of them from JSON text. Field
// names mirror the struct: family, alpha, eps, theta, t, sample_size,
// replications, seed, label, row_label, and estimator {type, p, level,
// variance_model}.
std::vector<mc::McConfig> parse_mc_configs(const std::string& json_text);

}  // namespace ingsub::io
