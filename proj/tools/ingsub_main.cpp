// Command-line front end: simulate subordinator data, estimate parameters
// from CSV datasets, run Monte Carlo experiment files, and regenerate the
// built-in reference tables.
//
// Exit codes: 0 success, 2 validation error, 3 convergence/estimation
// failure, 4 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "ingsub/errors.hpp"
#include "ingsub/estimators.hpp"
#include "ingsub/io.hpp"
#include "ingsub/mc.hpp"
#include "ingsub/model.hpp"
#include "ingsub/presets.hpp"
#include "ingsub/rng.hpp"
#include "ingsub/sim.hpp"

namespace {

using namespace ingsub;

ModelParams build_params(const std::string& family, double alpha,
                         std::optional<double> eps, std::optional<double> theta) {
    ModelParams p;
    p.family = family_from_name(family);
    p.alpha = alpha;
    p.eps = eps;
    p.theta = theta;
    p.validate();
    return p;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw io_error("failed while writing '" + path + "'");
}

struct SimulateArgs {
    std::string family = "ing";
    double alpha = 0.5;
    std::optional<double> eps;
    std::optional<double> theta;
    double t = 1.0;
    std::uint64_t n = 1;
    std::uint64_t seed = 1;
    std::string out;
    bool jumps = false;
};

int run_simulate(const SimulateArgs& a) {
    const ModelParams params = build_params(a.family, a.alpha, a.eps, a.theta);
    if (!(a.t > 0.0))
        throw validation_error("--t must be positive");
    std::vector<io::SimRow> rows(a.n);
    const std::int64_t n = static_cast<std::int64_t>(a.n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        RngStream rng(a.seed, static_cast<std::uint64_t>(i) + 1);
        io::SimRow row;
        row.stream = static_cast<std::uint64_t>(i) + 1;
        if (a.jumps) {
            row.value = sim::sample_jump(params, rng);
            row.jump_count = 1;
        } else {
            const sim::PathStats st = sim::sample_path_stats(params, a.t, rng);
            row.value = st.value;
            row.jump_count = st.jump_count;
        }
        rows[static_cast<std::size_t>(i)] = row;
    }
    if (a.out.empty()) {
        io::write_sim_csv(std::cout, params, a.t, a.seed, rows);
    } else {
        std::ostringstream buf;
        io::write_sim_csv(buf, params, a.t, a.seed, rows);
        write_text_file(a.out, buf.str());
    }
    return 0;
}

struct EstimateArgs {
    std::string in;
    std::string estimator = "mle";
    std::optional<double> eps;
    std::optional<double> t;
    double p = 0.05;
    double level = 0.95;
    std::string variance_model = "fisher";
    std::string out;
};

int run_estimate(const EstimateArgs& a) {
    const io::SimData data = io::read_values_csv(a.in);
    est::EstimateReport rep;
    if (a.estimator == "mle") {
        rep = a.eps ? est::mle_alpha_ing_eps(data.values, *a.eps)
                    : est::mle_alpha_ing(data.values);
        rep = est::mle_asymptotic_ci(std::move(rep), a.level,
                                     est::variance_model_from_name(a.variance_model));
    } else if (a.estimator == "mom" || a.estimator == "fracmom") {
        const std::optional<double> t = a.t ? a.t : data.t;
        if (!t)
            throw validation_error(
                "--t is required (the input CSV carries no 't' column)");
        if (a.estimator == "mom") {
            if (a.eps)
                throw validation_error("--eps does not apply to the mom estimator");
            rep = est::mom_ting(data.values, *t);
        } else {
            const Family family = a.eps ? Family::InGEps : Family::InG;
            rep = est::fracmom_alpha(data.values, *t, {a.p}, family, a.eps);
        }
    } else {
        throw validation_error("unknown estimator '" + a.estimator +
                               "' (expected mle, mom, or fracmom)");
    }
    const std::string doc = io::estimate_report_json(rep);
    if (a.out.empty())
        std::cout << doc;
    else
        write_text_file(a.out, doc);
    return 0;
}

std::string format_extension(mc::TableFormat f) {
    switch (f) {
        case mc::TableFormat::Csv: return ".csv";
        case mc::TableFormat::Json: return ".json";
        case mc::TableFormat::Text: return ".txt";
    }
    return ".txt";
}

struct ExperimentArgs {
    std::string config;
    std::string out_dir = ".";
    std::string format = "csv";
    bool serial = false;
};

int run_experiment(const ExperimentArgs& a) {
    std::ifstream in(a.config);
    if (!in)
        throw io_error("cannot open '" + a.config + "' for reading");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::vector<mc::McConfig> configs = io::parse_mc_configs(buf.str());
    const mc::TableFormat format = mc::table_format_from_name(a.format);
    const mc::Exec exec = a.serial ? mc::Exec::Serial : mc::Exec::OpenMP;

    // Fail before the runs, not after, if the output directory is unusable.
    std::error_code ec;
    std::filesystem::create_directories(a.out_dir, ec);
    if (ec)
        throw io_error("cannot create output directory '" + a.out_dir +
                       "': " + ec.message());

    // Preserve first-appearance order of the label groups.
    std::vector<std::string> group_order;
    std::map<std::string, std::vector<mc::McSummary>> groups;
    double total_wall = 0.0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        mc::McSummary s = mc::run_mc(configs[i], exec);
        total_wall += s.wall_seconds;
        std::string key = configs[i].label.empty() ? "group" + std::to_string(i)
                                                   : configs[i].label;
        if (!groups.count(key)) group_order.push_back(key);
        groups[key].push_back(std::move(s));
    }
    for (const auto& key : group_order) {
        const std::string doc = mc::emit_table(groups[key], format);
        const std::string path = a.out_dir + "/" + key + format_extension(format);
        write_text_file(path, doc);
        std::cout << path << "\n";
    }
    std::cerr << "total estimation wall time: " << total_wall << " s\n";
    return 0;
}

struct TablesArgs {
    int which = 1;
    std::uint64_t seed = 1;
    std::size_t replications = 100;
    std::optional<double> t;
    double eps = 0.5;
    double p = 0.05;
    std::string format = "text";
    std::string out;
    bool serial = false;
};

int run_tables(const TablesArgs& a) {
    presets::TableOptions opt;
    opt.seed = a.seed;
    opt.replications = a.replications;
    opt.t = a.t;
    opt.eps = a.eps;
    opt.p = a.p;
    const std::vector<mc::McConfig> configs = presets::table_configs(a.which, opt);
    const mc::Exec exec = a.serial ? mc::Exec::Serial : mc::Exec::OpenMP;
    std::vector<mc::McSummary> summaries;
    double total_wall = 0.0;
    for (const auto& cfg : configs) {
        summaries.push_back(mc::run_mc(cfg, exec));
        total_wall += summaries.back().wall_seconds;
    }
    const std::string doc =
        mc::emit_table(summaries, mc::table_format_from_name(a.format));
    if (a.out.empty())
        std::cout << doc;
    else
        write_text_file(a.out, doc);
    std::cerr << "total estimation wall time: " << total_wall << " s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and estimation toolkit for inverse-gamma-type "
                 "subordinators (InG, rescaled InG, tempered InG)"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "Draw subordinator paths (or raw jumps) and write them as CSV");
    sim_cmd->add_option("--family", sim_args.family, "ing | ing-eps | ting")
        ->required();
    sim_cmd->add_option("--alpha", sim_args.alpha, "stability index in (0, 1)")
        ->required();
    sim_cmd->add_option("--eps", sim_args.eps, "jump rescaling (ing-eps only)");
    sim_cmd->add_option("--theta", sim_args.theta, "tempering rate (ting only)");
    sim_cmd->add_option("--t", sim_args.t, "observation horizon (default 1)");
    sim_cmd->add_option("--n", sim_args.n, "number of paths")->required();
    sim_cmd->add_option("--seed", sim_args.seed, "RNG seed")->required();
    sim_cmd->add_option("--out", sim_args.out, "output CSV path (default stdout)");
    sim_cmd->add_flag("--jumps", sim_args.jumps,
                      "draw single jumps instead of paths over t");

    EstimateArgs est_args;
    auto* est_cmd = app.add_subcommand(
        "estimate", "Fit parameters to the 'value' column of a CSV dataset");
    est_cmd->add_option("--in", est_args.in, "input CSV path")->required();
    est_cmd->add_option("--estimator", est_args.estimator,
                        "mle (jumps) | mom (ting paths) | fracmom (paths)");
    est_cmd->add_option("--eps", est_args.eps,
                        "treat data as the rescaled family with this eps");
    est_cmd->add_option("--t", est_args.t,
                        "observation horizon (defaults to the CSV 't' column)");
    est_cmd->add_option("--p", est_args.p, "fractional-moment order (default 0.05)");
    est_cmd->add_option("--level", est_args.level,
                        "confidence level for the MLE interval (default 0.95)");
    est_cmd->add_option("--variance-model", est_args.variance_model,
                        "fisher | reported | reported-eps");
    est_cmd->add_option("--out", est_args.out, "output JSON path (default stdout)");

    ExperimentArgs exp_args;
    auto* exp_cmd = app.add_subcommand(
        "experiment", "Run Monte Carlo configs from a JSON file and emit tables");
    exp_cmd->add_option("--config", exp_args.config, "JSON config (object or array)")
        ->required();
    exp_cmd->add_option("--out-dir", exp_args.out_dir,
                        "directory for emitted tables (default .)");
    exp_cmd->add_option("--format", exp_args.format, "csv | json | text (default csv)");
    exp_cmd->add_flag("--serial", exp_args.serial, "disable OpenMP execution");

    TablesArgs tab_args;
    auto* tab_cmd = app.add_subcommand(
        "tables", "Re-run one of the built-in reference tables 1-6");
    tab_cmd->add_option("--which", tab_args.which, "table number 1-6")->required();
    tab_cmd->add_option("--seed", tab_args.seed, "base RNG seed")->required();
    tab_cmd->add_option("--replications", tab_args.replications,
                        "Monte Carlo replications per cell (default 100)");
    tab_cmd->add_option("--t", tab_args.t, "override the table's default horizon");
    tab_cmd->add_option("--eps", tab_args.eps, "rescaling for table 6 (default 0.5)");
    tab_cmd->add_option("--p", tab_args.p,
                        "fractional-moment order for tables 5-6 (default 0.05)");
    tab_cmd->add_option("--format", tab_args.format, "csv | json | text (default text)");
    tab_cmd->add_option("--out", tab_args.out, "output path (default stdout)");
    tab_cmd->add_flag("--serial", tab_args.serial, "disable OpenMP execution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim_cmd->parsed()) return run_simulate(sim_args);
        if (est_cmd->parsed()) return run_estimate(est_args);
        if (exp_cmd->parsed()) return run_experiment(exp_args);
        if (tab_cmd->parsed()) return run_tables(tab_args);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
