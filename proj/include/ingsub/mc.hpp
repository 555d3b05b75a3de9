#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ingsub/estimators.hpp"
#include "ingsub/model.hpp"

namespace ingsub::mc {

struct EstimatorConfig {
    est::Estimator type = est::Estimator::MleInG;
    double p = 0.05;            // fractional-moment order
    double level = 0.0;         // attach a CI when > 0 (MLE only)
    est::VarianceModel variance_model = est::VarianceModel::FisherInG;
};

// One Monte Carlo experiment: `replications` independent datasets of
// `sample_size` draws each (raw jumps for the MLEs, path values at horizon
// t otherwise), estimated and summarized against the true parameters.
struct McConfig {
    ModelParams params;
    double t = 1.0;
    std::size_t sample_size = 0;
    std::size_t replications = 0;
    EstimatorConfig estimator;
    std::uint64_t seed = 1;
    std::string label;      // groups configs into one emitted table
    std::string row_label;  // overrides the per-parameter row name

    void validate() const;  // also checks estimator/family compatibility
};

struct ParamSummaryRow {
    std::string name;  // row_label when set, parameter name otherwise
    double true_value = 0.0;
    double mean = 0.0;
    double mad = 0.0;  // mean absolute deviation from the true value
    double mse = 0.0;
};

struct McSummary {
    McConfig config;
    std::vector<ParamSummaryRow> rows;
    std::size_t failed_replications = 0;
    double wall_seconds = 0.0;  // never written into emitted documents
};

enum class Exec { Serial, OpenMP };

// True parameter vector in report order ({alpha} or {alpha, theta}).
std::vector<double> true_params(const ModelParams& params);

// Summary statistics of per-replication estimate vectors against the
// truth. mean/mad/mse are plain averages; the identity
// mse <= max|deviation| * mad is asserted as a sanity bound.
McSummary summarize(std::span<const std::vector<double>> estimates,
                    const ModelParams& truth);

// Run the experiment. Replication r draws from RngStream(seed, r + 1), so
// the result is a pure function of the config: serial and OpenMP execution
// at any worker count produce bit-identical summaries. Replications whose
// estimator throws are recorded as failures; more than 10% failures aborts
// with convergence_error. Wall-clock time goes only to wall_seconds.
McSummary run_mc(const McConfig& config, Exec exec = Exec::OpenMP);

enum class TableFormat { Csv, Json, Text };

TableFormat table_format_from_name(std::string_view name);

// Render a group of summaries as one table document: one row per
// (row label, parameter), one column group (mean, MAD, MSE) per sample
// size in ascending order. All summaries must share family, estimator,
// and horizon, and each (row, sample size) cell must be unique.
//   csv   RFC-4180-style, full %.17g precision
//   json  array of row objects with a config echo
//   text  fixed four-decimal layout for terminals
std::string emit_table(std::span<const McSummary> summaries, TableFormat format);

}  // namespace ingsub::mc
