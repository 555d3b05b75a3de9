#include "ingsub/mc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "ingsub/errors.hpp"
#include "ingsub/rng.hpp"
#include "ingsub/sim.hpp"

#include <json.hpp>

namespace ingsub::mc {

namespace {

double wall_now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
#endif
}

bool estimator_uses_jumps(est::Estimator e) {
    return e == est::Estimator::MleInG || e == est::Estimator::MleInGEps;
}

// One replication: draw the dataset from its own stream and estimate.
std::vector<double> run_one(const McConfig& cfg, std::uint64_t replication) {
    RngStream rng(cfg.seed, replication);
    std::vector<double> data;
    data.reserve(cfg.sample_size);
    if (estimator_uses_jumps(cfg.estimator.type)) {
        for (std::size_t i = 0; i < cfg.sample_size; ++i)
            data.push_back(sim::sample_jump(cfg.params, rng));
    } else {
        for (std::size_t i = 0; i < cfg.sample_size; ++i)
            data.push_back(sim::sample_path_stats(cfg.params, cfg.t, rng).value);
    }
    est::EstimateReport rep;
    switch (cfg.estimator.type) {
        case est::Estimator::MleInG:
            rep = est::mle_alpha_ing(data);
            break;
        case est::Estimator::MleInGEps:
            rep = est::mle_alpha_ing_eps(data, *cfg.params.eps);
            break;
        case est::Estimator::MomTInG:
            rep = est::mom_ting(data, cfg.t);
            break;
        case est::Estimator::FracMomInG:
            rep = est::fracmom_alpha(data, cfg.t, {cfg.estimator.p}, Family::InG);
            break;
        case est::Estimator::FracMomInGEps:
            rep = est::fracmom_alpha(data, cfg.t, {cfg.estimator.p}, Family::InGEps,
                                     cfg.params.eps);
            break;
    }
    std::vector<double> point;
    point.reserve(rep.params.size());
    for (const auto& p : rep.params) point.push_back(p.value);
    return point;
}

std::vector<std::string> param_names(const ModelParams& params) {
    if (params.family == Family::TInG) return {"alpha", "theta"};
    return {"alpha"};
}

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_f4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

}  // namespace

void McConfig::validate() const {
    params.validate();
    if (!std::isfinite(t) || !(t > 0.0))
        throw validation_error("McConfig: t must be positive and finite");
    if (sample_size == 0)
        throw validation_error("McConfig: sample_size must be positive");
    if (replications == 0)
        throw validation_error("McConfig: replications must be positive");
    const bool ok = (estimator.type == est::Estimator::MleInG && params.family == Family::InG) ||
                    (estimator.type == est::Estimator::MleInGEps && params.family == Family::InGEps) ||
                    (estimator.type == est::Estimator::MomTInG && params.family == Family::TInG) ||
                    (estimator.type == est::Estimator::FracMomInG && params.family == Family::InG) ||
                    (estimator.type == est::Estimator::FracMomInGEps && params.family == Family::InGEps);
    if (!ok)
        throw validation_error(std::string("McConfig: estimator ") +
                               est::estimator_name(estimator.type) +
                               " does not apply to family " + family_name(params.family));
    if (!(estimator.p > 0.0) || !(estimator.p < 1.0))
        throw validation_error("McConfig: fractional-moment order p must lie in (0, 1)");
    if (estimator.level != 0.0 && (!(estimator.level > 0.0) || !(estimator.level < 1.0)))
        throw validation_error("McConfig: confidence level must lie in (0, 1)");
}

std::vector<double> true_params(const ModelParams& params) {
    if (params.family == Family::TInG) return {params.alpha, *params.theta};
    return {params.alpha};
}

McSummary summarize(std::span<const std::vector<double>> estimates,
                    const ModelParams& truth) {
    if (estimates.empty())
        throw validation_error("summarize: no estimates");
    const std::vector<double> tv = true_params(truth);
    const std::vector<std::string> names = param_names(truth);
    McSummary summary;
    summary.config.params = truth;
    summary.config.replications = estimates.size();
    for (std::size_t j = 0; j < tv.size(); ++j) {
        double mean = 0.0, mad = 0.0, mse = 0.0, max_dev = 0.0;
        for (const auto& e : estimates) {
            if (e.size() != tv.size())
                throw validation_error("summarize: estimate dimension mismatch");
            const double d = e[j] - tv[j];
            mean += e[j];
            mad += std::fabs(d);
            mse += d * d;
            max_dev = std::max(max_dev, std::fabs(d));
        }
        const double n = static_cast<double>(estimates.size());
        mean /= n;
        mad /= n;
        mse /= n;
        // Cauchy-Schwarz sanity bound; a violation means a bookkeeping bug.
        assert(mse <= max_dev * mad + 1e-12);
        summary.rows.push_back({names[j], tv[j], mean, mad, mse});
    }
    return summary;
}

McSummary run_mc(const McConfig& config, Exec exec) {
    config.validate();
    const double t0 = wall_now();
    const std::int64_t n = static_cast<std::int64_t>(config.replications);
    std::vector<std::vector<double>> points(config.replications);
    std::vector<std::uint8_t> failed(config.replications, 0);
    std::vector<std::string> first_error(config.replications);

    if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t r = 0; r < n; ++r) {
            try {
                points[r] = run_one(config, static_cast<std::uint64_t>(r) + 1);
            } catch (const std::exception& e) {
                failed[r] = 1;
                first_error[r] = e.what();
            }
        }
    } else {
        for (std::int64_t r = 0; r < n; ++r) {
            try {
                points[r] = run_one(config, static_cast<std::uint64_t>(r) + 1);
            } catch (const std::exception& e) {
                failed[r] = 1;
                first_error[r] = e.what();
            }
        }
    }

    std::size_t failures = 0;
    std::vector<std::vector<double>> good;
    good.reserve(config.replications);
    std::string sample_error;
    for (std::size_t r = 0; r < config.replications; ++r) {
        if (failed[r]) {
            ++failures;
            if (sample_error.empty()) sample_error = first_error[r];
        } else {
            good.push_back(points[r]);
        }
    }
    if (failures * 10 > config.replications)
        throw convergence_error("run_mc: " + std::to_string(failures) + " of " +
                                std::to_string(config.replications) +
                                " replications failed (first: " + sample_error + ")");

    McSummary summary = summarize(good, config.params);
    summary.config = config;
    summary.failed_replications = failures;
    if (!config.row_label.empty() && summary.rows.size() == 1)
        summary.rows[0].name = config.row_label;
    summary.wall_seconds = wall_now() - t0;
    return summary;
}

TableFormat table_format_from_name(std::string_view name) {
    if (name == "csv") return TableFormat::Csv;
    if (name == "json") return TableFormat::Json;
    if (name == "text") return TableFormat::Text;
    throw validation_error("unknown table format '" + std::string(name) +
                           "' (expected csv, json, or text)");
}

std::string emit_table(std::span<const McSummary> summaries, TableFormat format) {
    struct Cell {
        double mean, mad, mse;
    };
    // Row identity is (label, parameter); column identity is sample size.
    std::vector<std::pair<std::string, double>> row_order;  // name -> true value
    std::vector<std::size_t> col_order;
    std::map<std::pair<std::string, std::size_t>, Cell> cells;

    for (const auto& s : summaries) {
        const auto& first = summaries.front();
        if (s.config.params.family != first.config.params.family ||
            s.config.estimator.type != first.config.estimator.type ||
            s.config.t != first.config.t)
            throw validation_error(
                "emit_table: summaries mix families, estimators, or horizons");
        for (const auto& row : s.rows) {
            std::string key = row.name;
            if (!s.config.row_label.empty() && s.rows.size() > 1)
                key = s.config.row_label + ":" + row.name;
            if (std::find_if(row_order.begin(), row_order.end(), [&](const auto& r) {
                    return r.first == key;
                }) == row_order.end())
                row_order.emplace_back(key, row.true_value);
            if (std::find(col_order.begin(), col_order.end(), s.config.sample_size) ==
                col_order.end())
                col_order.push_back(s.config.sample_size);
            if (!cells.emplace(std::make_pair(key, s.config.sample_size),
                               Cell{row.mean, row.mad, row.mse})
                     .second)
                throw validation_error("emit_table: duplicate cell for row '" + key +
                                       "' at sample size " +
                                       std::to_string(s.config.sample_size));
        }
    }
    std::sort(col_order.begin(), col_order.end());

    std::ostringstream out;
    switch (format) {
        case TableFormat::Csv: {
            out << "param,true";
            for (std::size_t nn : col_order)
                out << ",mean_N" << nn << ",mad_N" << nn << ",mse_N" << nn;
            out << "\n";
            for (const auto& [name, tv] : row_order) {
                out << name << "," << format_g17(tv);
                for (std::size_t nn : col_order) {
                    const auto it = cells.find({name, nn});
                    if (it == cells.end()) {
                        out << ",,,";
                    } else {
                        out << "," << format_g17(it->second.mean) << ","
                            << format_g17(it->second.mad) << ","
                            << format_g17(it->second.mse);
                    }
                }
                out << "\n";
            }
            break;
        }
        case TableFormat::Json: {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            const McSummary* first = summaries.empty() ? nullptr : &summaries.front();
            for (const auto& [name, tv] : row_order) {
                nlohmann::ordered_json row;
                row["param"] = name;
                row["true"] = tv;
                if (first) {
                    row["family"] = family_name(first->config.params.family);
                    row["estimator"] = est::estimator_name(first->config.estimator.type);
                    row["t"] = first->config.t;
                }
                nlohmann::ordered_json cc = nlohmann::ordered_json::array();
                for (std::size_t nn : col_order) {
                    const auto it = cells.find({name, nn});
                    if (it == cells.end()) continue;
                    cc.push_back({{"sample_size", nn},
                                  {"mean", it->second.mean},
                                  {"mad", it->second.mad},
                                  {"mse", it->second.mse}});
                }
                row["cells"] = cc;
                rows.push_back(row);
            }
            out << rows.dump(2) << "\n";
            break;
        }
        case TableFormat::Text: {
            std::size_t name_w = 5;
            for (const auto& [name, tv] : row_order) name_w = std::max(name_w, name.size());
            out << std::setw(static_cast<int>(name_w)) << std::left << "param" << std::right
                << std::setw(9) << "true";
            for (std::size_t nn : col_order)
                out << std::setw(30) << ("N=" + std::to_string(nn));
            out << "\n" << std::string(name_w + 9, ' ');
            for (std::size_t i = 0; i < col_order.size(); ++i)
                out << std::setw(10) << "mean" << std::setw(10) << "MAD"
                    << std::setw(10) << "MSE";
            out << "\n";
            for (const auto& [name, tv] : row_order) {
                out << std::setw(static_cast<int>(name_w)) << std::left << name << std::right
                    << std::setw(9) << format_f4(tv);
                for (std::size_t nn : col_order) {
                    const auto it = cells.find({name, nn});
                    if (it == cells.end()) {
                        out << std::string(30, ' ');
                    } else {
                        out << std::setw(10) << format_f4(it->second.mean)
                            << std::setw(10) << format_f4(it->second.mad)
                            << std::setw(10) << format_f4(it->second.mse);
                    }
                }
                out << "\n";
            }
            break;
        }
    }
    return out.str();
}

}  // namespace ingsub::mc
