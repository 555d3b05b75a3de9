#include "ingsub/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ingsub/errors.hpp"

#include <json.hpp>

namespace ingsub::io {

namespace {

std::string g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw io_error("trailing characters after number in " + context + ": '" + s + "'");
        return v;
    } catch (const io_error&) {
        throw;
    } catch (const std::exception&) {
        throw io_error("cannot parse number in " + context + ": '" + s + "'");
    }
}

est::Estimator estimator_from_string(const std::string& s, Family family) {
    if (s == "mle")
        return family == Family::InGEps ? est::Estimator::MleInGEps : est::Estimator::MleInG;
    if (s == "mom") return est::Estimator::MomTInG;
    if (s == "fracmom")
        return family == Family::InGEps ? est::Estimator::FracMomInGEps
                                        : est::Estimator::FracMomInG;
    throw validation_error("unknown estimator '" + s +
                           "' (expected mle, mom, or fracmom)");
}

mc::McConfig parse_one_config(const nlohmann::json& j) {
    if (!j.is_object())
        throw validation_error("experiment config must be a JSON object");
    mc::McConfig cfg;
    const std::string family = j.value("family", std::string("ing"));
    cfg.params.family = family_from_name(family);
    if (!j.contains("alpha"))
        throw validation_error("experiment config needs 'alpha'");
    cfg.params.alpha = j.at("alpha").get<double>();
    if (j.contains("eps")) cfg.params.eps = j.at("eps").get<double>();
    if (j.contains("theta")) cfg.params.theta = j.at("theta").get<double>();
    cfg.t = j.value("t", 1.0);
    if (!j.contains("sample_size") || !j.contains("replications"))
        throw validation_error("experiment config needs 'sample_size' and 'replications'");
    cfg.sample_size = j.at("sample_size").get<std::size_t>();
    cfg.replications = j.at("replications").get<std::size_t>();
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.label = j.value("label", std::string());
    cfg.row_label = j.value("row_label", std::string());
    if (j.contains("estimator")) {
        const auto& e = j.at("estimator");
        if (!e.is_object() || !e.contains("type"))
            throw validation_error("experiment 'estimator' must be an object with 'type'");
        cfg.estimator.type = estimator_from_string(e.at("type").get<std::string>(),
                                                   cfg.params.family);
        cfg.estimator.p = e.value("p", 0.05);
        cfg.estimator.level = e.value("level", 0.0);
        if (e.contains("variance_model"))
            cfg.estimator.variance_model =
                est::variance_model_from_name(e.at("variance_model").get<std::string>());
    } else {
        throw validation_error("experiment config needs an 'estimator' object");
    }
    cfg.validate();
    return cfg;
}

}  // namespace

void write_sim_csv(std::ostream& out, const ModelParams& params, double t,
                   std::uint64_t seed, std::span<const SimRow> rows) {
    out << kSimCsvHeader << "\n";
    const std::string family = family_name(params.family);
    const std::string alpha = g17(params.alpha);
    const std::string eps = params.eps ? g17(*params.eps) : std::string();
    const std::string theta = params.theta ? g17(*params.theta) : std::string();
    const std::string ts = g17(t);
    for (const auto& r : rows) {
        out << family << ',' << alpha << ',' << eps << ',' << theta << ',' << ts << ','
            << seed << ',' << r.stream << ',' << g17(r.value) << ',' << r.jump_count
            << "\n";
    }
}

SimData read_values_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line))
        throw io_error("'" + path + "' is empty");
    const std::vector<std::string> header = split_csv_line(line);
    std::ptrdiff_t value_col = -1, t_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "value") value_col = static_cast<std::ptrdiff_t>(i);
        if (header[i] == "t") t_col = static_cast<std::ptrdiff_t>(i);
    }
    if (value_col < 0)
        throw io_error("'" + path + "' has no 'value' column in its header");
    SimData data;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() <= static_cast<std::size_t>(value_col))
            throw io_error("'" + path + "' line " + std::to_string(lineno) +
                           " has too few fields");
        data.values.push_back(parse_double(fields[static_cast<std::size_t>(value_col)],
                                           path + " line " + std::to_string(lineno)));
        if (t_col >= 0 && !data.t && fields.size() > static_cast<std::size_t>(t_col) &&
            !fields[static_cast<std::size_t>(t_col)].empty())
            data.t = parse_double(fields[static_cast<std::size_t>(t_col)],
                                  path + " line " + std::to_string(lineno));
    }
    if (data.values.empty())
        throw io_error("'" + path + "' contains no data rows");
    return data;
}

std::string estimate_report_json(const est::EstimateReport& rep) {
    nlohmann::ordered_json j;
    j["estimator"] = est::estimator_name(rep.estimator);
    j["n"] = rep.n;
    if (rep.eps) j["eps"] = *rep.eps;
    if (rep.ci_level > 0.0) j["ci_level"] = rep.ci_level;
    nlohmann::ordered_json params = nlohmann::ordered_json::array();
    for (const auto& p : rep.params) {
        nlohmann::ordered_json pj;
        pj["name"] = p.name;
        pj["value"] = p.value;
        if (p.std_error) pj["std_error"] = *p.std_error;
        if (p.ci) pj["ci"] = {(*p.ci)[0], (*p.ci)[1]};
        params.push_back(pj);
    }
    j["params"] = params;
    nlohmann::ordered_json d;
    d["iterations"] = rep.diagnostics.iterations;
    d["residual_norm"] = rep.diagnostics.residual_norm;
    if (!rep.diagnostics.branch.empty()) d["branch"] = rep.diagnostics.branch;
    if (!rep.diagnostics.notes.empty()) d["notes"] = rep.diagnostics.notes;
    if (!rep.diagnostics.extra.empty()) {
        nlohmann::ordered_json e;
        for (const auto& [k, v] : rep.diagnostics.extra) e[k] = v;
        d["extra"] = e;
    }
    j["diagnostics"] = d;
    return j.dump(2) + "\n";
}

std::vector<mc::McConfig> parse_mc_configs(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw io_error(std::string("experiment config is not valid JSON: ") + e.what());
    }
    std::vector<mc::McConfig> configs;
    if (j.is_array()) {
        for (const auto& item : j) configs.push_back(parse_one_config(item));
    } else {
        configs.push_back(parse_one_config(j));
    }
    if (configs.empty())
        throw validation_error("experiment config array is empty");
    return configs;
}

}  // namespace ingsub::io
