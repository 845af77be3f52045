#include "mec/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace mec {

nlohmann::json bits_json(double v) {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return v;
}

nlohmann::json to_json(const DetectionResult& r) {
    nlohmann::json models = nlohmann::json::array();
    for (const auto& m : r.per_model) {
        models.push_back({{"label", m.label},
                          {"index", m.index},
                          {"model_bits", bits_json(m.model_bits)},
                          {"data_bits", bits_json(m.data_bits)},
                          {"penalized_bits", bits_json(m.penalized_bits)}});
    }
    nlohmann::json j = {{"default_bits", bits_json(r.default_bits)},
                        {"combined_bits", bits_json(r.combined_bits)},
                        {"score", bits_json(r.score)},
                        {"tau", r.tau},
                        {"ood", r.ood},
                        {"per_model", std::move(models)}};
    j["selected"] = r.selected ? nlohmann::json(*r.selected) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const HistogramScore& r, double tau, const std::string& cdf) {
    return {{"combined_bits", bits_json(r.combined_bits)},
            {"default_bits", 0.0},
            {"score", bits_json(r.score)},
            {"tau", tau},
            {"ood", r.ood},
            {"duplicate", r.duplicate},
            {"cdf", cdf}};
}

nlohmann::json to_json(const BenchResult& r) {
    const auto& c = r.config;
    nlohmann::json scores = nlohmann::json::array();
    for (const auto& t : r.trials) {
        scores.push_back({{"trial", t.trial},
                          {"anomalous", t.anomalous},
                          {"seed", t.seed},
                          {"score", bits_json(t.score)}});
    }
    return {{"auroc", r.auroc},
            {"seconds", r.seconds},
            {"config",
             {{"case", c.scenario},
              {"n", c.n},
              {"M", c.M},
              {"trials", c.trials},
              {"seed", c.seed},
              {"combiner", c.detect.combiner == Combiner::weighted ? "weighted" : "select"},
              {"whiten", c.detect.whiten},
              {"prior_weight", c.detect.coder_options.prior_weight},
              {"center_base", c.center_base},
              {"null_run", c.null_run},
              {"default_model", c.default_model == DefaultModelMode::analytic ? "analytic" : "fitted"},
              {"jobs", c.jobs}}},
            {"scores", std::move(scores)}};
}

nlohmann::json to_json(const Chi2CheckResult& r) {
    return {{"n", r.config.n},
            {"M", r.config.M},
            {"trials", r.config.trials},
            {"seed", r.config.seed},
            {"dof", r.dof},
            {"ks_distance", r.ks_distance},
            {"threshold", r.config.threshold},
            {"critical_value", r.critical_value},
            {"mean_statistic", r.mean_statistic},
            {"verdict", std::string(to_string(r.verdict))}};
}

void write_trials_csv(std::ostream& out, const BenchResult& r) {
    out << "trial,label,seed,score\n";
    out << std::setprecision(17);
    for (const auto& t : r.trials) {
        out << t.trial << ',' << (t.anomalous ? "anomalous" : "default") << ',' << t.seed << ','
            << t.score << '\n';
    }
}

std::string format_bench_text(const BenchResult& r) {
    std::ostringstream os;
    const auto& c = r.config;
    os << std::left << std::setw(10) << "case" << std::setw(6) << "M" << std::setw(8) << "trials"
       << std::setw(10) << "auroc" << "seconds\n";
    os << std::left << std::setw(10) << c.scenario << std::setw(6) << c.M << std::setw(8)
       << c.trials << std::setw(10) << std::fixed << std::setprecision(4) << r.auroc
       << std::setprecision(1) << r.seconds << '\n';
    return os.str();
}

}  // namespace mec
