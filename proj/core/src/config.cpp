#include "mec/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "mec/errors.hpp"

namespace mec {
namespace {

void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T get_as(const nlohmann::json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(doc,
                   {"lambda_grid", "combiner", "tau", "whiten", "use_gamma", "prior_weight",
                    "m_grid_max_exponent", "seed", "scenario"},
                   "config");
    RunConfig cfg;
    if (doc.contains("lambda_grid")) {
        const auto& g = doc["lambda_grid"];
        if (g.is_array()) {
            cfg.detect.lambda_grid.values = get_as<std::vector<double>>(g, "lambda_grid");
            if (cfg.detect.lambda_grid.values.empty()) throw ConfigError("lambda_grid is empty");
            for (double v : cfg.detect.lambda_grid.values) {
                if (!(v >= 0.0)) throw ConfigError("lambda_grid values must be >= 0");
            }
        } else if (g.is_object()) {
            reject_unknown(g, {"count", "min_ratio", "include_zero"}, "lambda_grid");
            auto& spec = cfg.detect.lambda_grid;
            if (g.contains("count")) spec.count = get_as<int>(g["count"], "lambda_grid.count");
            if (g.contains("min_ratio")) {
                spec.min_ratio = get_as<double>(g["min_ratio"], "lambda_grid.min_ratio");
            }
            if (g.contains("include_zero")) {
                spec.include_zero = get_as<bool>(g["include_zero"], "lambda_grid.include_zero");
            }
            if (spec.count < 0) throw ConfigError("lambda_grid.count must be >= 0");
            if (!(spec.min_ratio > 0.0 && spec.min_ratio <= 1.0)) {
                throw ConfigError("lambda_grid.min_ratio must lie in (0, 1]");
            }
        } else {
            throw ConfigError("lambda_grid must be a list or an object");
        }
    }
    if (doc.contains("combiner")) {
        const auto c = get_as<std::string>(doc["combiner"], "combiner");
        if (c == "weighted") {
            cfg.detect.combiner = Combiner::weighted;
        } else if (c == "select") {
            cfg.detect.combiner = Combiner::select;
        } else {
            throw ConfigError("combiner must be \"weighted\" or \"select\"");
        }
    }
    if (doc.contains("tau")) cfg.detect.tau = get_as<double>(doc["tau"], "tau");
    if (doc.contains("whiten")) cfg.detect.whiten = get_as<bool>(doc["whiten"], "whiten");
    if (doc.contains("use_gamma")) cfg.detect.use_gamma = get_as<bool>(doc["use_gamma"], "use_gamma");
    if (doc.contains("prior_weight")) {
        const double w = get_as<double>(doc["prior_weight"], "prior_weight");
        if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("prior_weight must be >= 0");
        cfg.detect.coder_options.prior_weight = w;
    }
    if (doc.contains("m_grid_max_exponent")) {
        cfg.m_grid_max_exponent = get_as<int>(doc["m_grid_max_exponent"], "m_grid_max_exponent");
        if (cfg.m_grid_max_exponent < 0 || cfg.m_grid_max_exponent > 62) {
            throw ConfigError("m_grid_max_exponent must lie in [0, 62]");
        }
    }
    if (doc.contains("seed")) cfg.seed = get_as<std::uint64_t>(doc["seed"], "seed");
    if (doc.contains("scenario")) {
        const auto& s = doc["scenario"];
        if (!s.is_object()) throw ConfigError("scenario must be an object");
        reject_unknown(s, {"n", "default_model", "fitted_draws", "center_base"}, "scenario");
        if (s.contains("n")) cfg.n = get_as<int>(s["n"], "scenario.n");
        if (s.contains("default_model")) {
            const auto mode = get_as<std::string>(s["default_model"], "scenario.default_model");
            if (mode == "analytic") {
                cfg.default_model = DefaultModelMode::analytic;
            } else if (mode == "fitted") {
                cfg.default_model = DefaultModelMode::fitted;
            } else {
                throw ConfigError("scenario.default_model must be \"analytic\" or \"fitted\"");
            }
        }
        if (s.contains("fitted_draws")) {
            cfg.fitted_draws = get_as<int>(s["fitted_draws"], "scenario.fitted_draws");
            if (cfg.fitted_draws < 2) throw ConfigError("scenario.fitted_draws must be >= 2");
        }
        if (s.contains("center_base")) {
            cfg.center_base = get_as<bool>(s["center_base"], "scenario.center_base");
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_run_config(doc);
}

nlohmann::json to_json(const RunConfig& cfg) {
    nlohmann::json j;
    const auto& grid = cfg.detect.lambda_grid;
    if (!grid.values.empty()) {
        j["lambda_grid"] = grid.values;
    } else {
        j["lambda_grid"] = {{"count", grid.count},
                            {"min_ratio", grid.min_ratio},
                            {"include_zero", grid.include_zero}};
    }
    j["combiner"] = cfg.detect.combiner == Combiner::weighted ? "weighted" : "select";
    j["tau"] = cfg.detect.tau;
    j["whiten"] = cfg.detect.whiten;
    j["use_gamma"] = cfg.detect.use_gamma;
    j["prior_weight"] = cfg.detect.coder_options.prior_weight;
    j["m_grid_max_exponent"] = cfg.m_grid_max_exponent;
    if (cfg.seed) j["seed"] = *cfg.seed;
    j["scenario"] = {{"n", cfg.n},
                     {"default_model",
                      cfg.default_model == DefaultModelMode::analytic ? "analytic" : "fitted"},
                     {"fitted_draws", cfg.fitted_draws},
                     {"center_base", cfg.center_base}};
    return j;
}

std::string run_config_help() {
    return "Config file keys (JSON object, all optional, unknown keys rejected):\n"
           "  lambda_grid          list of lambdas, or {count:16, min_ratio:0.01, include_zero:true}\n"
           "  combiner             \"weighted\" (default) or \"select\"\n"
           "  tau                  threshold in bits (default 0)\n"
           "  whiten               code in default-whitened coordinates (default false)\n"
           "  use_gamma            include the Gamma radial coder (default true)\n"
           "  prior_weight         pseudo-samples of the default covariance in prefix\n"
           "                       estimates; 0 uses a small ridge instead (default 1)\n"
           "  m_grid_max_exponent  histogram bins 2^0..2^k (default 40)\n"
           "  seed                 RNG seed for randomized commands\n"
           "  scenario             {n:6, default_model:\"analytic\"|\"fitted\", fitted_draws:10000,\n"
           "                        center_base:true}\n";
}

}  // namespace mec
