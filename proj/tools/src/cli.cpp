#include "mec/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mec/mec.hpp"

namespace mec::cli {
namespace {

struct Options {
    std::string config;

    std::string default_path;
    std::string batch_path;
    std::optional<double> tau;

    int scenario = 1;
    int M = 25;
    int trials = 1000;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    int jobs = 1;

    std::string input_path;
    std::string cdf = "none";

    int n = 1;
    int chi2_M = 200;
    int chi2_trials = 5000;
};

RunConfig load_config(const Options& o) {
    return o.config.empty() ? RunConfig{} : load_run_config(o.config);
}

std::uint64_t pick_seed(const Options& o, const RunConfig& cfg, std::ostream& err) {
    if (o.seed) return *o.seed;
    if (cfg.seed) return *cfg.seed;
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    err << "seed: " << seed << " (pass --seed " << seed << " to replay)\n";
    return seed;
}

int cmd_detect(const Options& o, std::ostream& out) {
    RunConfig cfg = load_config(o);
    if (o.tau) cfg.detect.tau = *o.tau;
    const GaussianModel model = io::read_covariance(o.default_path);
    const Batch batch(io::read_samples(o.batch_path));
    const DetectionResult r = detect(batch, model, cfg.detect);
    out << to_json(r).dump(2) << '\n';
    return r.ood ? kOod : kOk;
}

std::filesystem::path with_extension(std::filesystem::path p, const char* ext) {
    return p.replace_extension(ext);
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.trials % 2 != 0) throw ConfigError("bench: --trials must be even");
    const RunConfig cfg = load_config(o);
    ExperimentConfig ex;
    ex.scenario = o.scenario;
    ex.n = cfg.n;
    ex.M = o.M;
    ex.trials = o.trials;
    ex.seed = pick_seed(o, cfg, err);
    ex.detect = cfg.detect;
    ex.default_model = cfg.default_model;
    ex.fitted_draws = cfg.fitted_draws;
    ex.center_base = cfg.center_base;
    ex.jobs = o.jobs;
    if (ex.trials < 200) {
        const double se = 0.5 / std::sqrt(0.5 * ex.trials);
        err << "warning: " << ex.trials << " trials give an AUROC standard error of up to "
            << se << "\n";
    }

    const BenchResult r = run_experiment(ex);
    const nlohmann::json j = to_json(r);
    if (!o.out_path.empty()) {
        const std::filesystem::path base(o.out_path);
        std::ofstream json_file(with_extension(base, ".json"));
        std::ofstream csv_file(with_extension(base, ".csv"));
        if (!json_file || !csv_file) throw DataError("cannot write results next to " + o.out_path);
        json_file << j.dump(2) << '\n';
        write_trials_csv(csv_file, r);
    }
    err << format_bench_text(r);
    out << j.dump(2) << '\n';
    return kOk;
}

int cmd_hist(const Options& o, std::ostream& out) {
    const RunConfig cfg = load_config(o);
    const Bits tau = o.tau ? *o.tau : cfg.detect.tau;
    const Eigen::MatrixXd m = io::read_samples(o.input_path);
    if (m.cols() != 1) {
        throw DataError("hist: expected one column, got " + std::to_string(m.cols()));
    }
    std::vector<double> x(m.data(), m.data() + m.rows());

    std::vector<double> u;
    if (o.cdf == "none") {
        for (double v : x) {
            if (!(v >= 0.0 && v < 1.0)) throw DataError("hist: values must lie in [0, 1)");
        }
        u = std::move(x);
    } else if (o.cdf == "normal") {
        u = cdf_transform(x, normal_cdf);
    } else {
        u = cdf_transform(x, io::read_cdf_table(o.cdf));
    }

    const auto grid = histogram_grid(cfg.m_grid_max_exponent);
    const HistogramScore r = histogram_weighted_score(u, grid, tau);
    out << to_json(r, tau, o.cdf).dump(2) << '\n';
    return r.ood ? kOod : kOk;
}

int cmd_chi2check(const Options& o, std::ostream& out, std::ostream& err) {
    Chi2CheckConfig c;
    c.n = o.n;
    c.M = o.chi2_M;
    c.trials = o.chi2_trials;
    c.seed = pick_seed(o, RunConfig{}, err);
    c.jobs = o.jobs;
    const Chi2CheckResult r = chi2_check(c);
    out << to_json(r).dump(2) << '\n';
    return r.verdict == Chi2Verdict::fail ? kOod : kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximum-entropy coding tests for out-of-distribution batches", "mec"};
    app.require_subcommand(1);
    app.footer(run_config_help());
    Options o;

    auto* detect_cmd = app.add_subcommand("detect", "Score a batch against a Gaussian default model");
    detect_cmd->add_option("--default", o.default_path, "Default covariance, n x n CSV")
        ->required()
        ->check(CLI::ExistingFile);
    detect_cmd->add_option("--batch", o.batch_path, "Batch, CSV or MECB")
        ->required()
        ->check(CLI::ExistingFile);
    detect_cmd->add_option("--config", o.config, "JSON run config")->check(CLI::ExistingFile);
    detect_cmd->add_option("--tau", o.tau, "OOD threshold in bits");

    auto* bench_cmd = app.add_subcommand("bench", "Synthetic AUROC benchmark");
    bench_cmd->add_option("--case", o.scenario, "Scenario 1..6")->check(CLI::Range(1, 6));
    bench_cmd->add_option("--M", o.M, "Batch size")->check(CLI::Range(2, 1 << 20));
    bench_cmd->add_option("--trials", o.trials, "Even number of trials")
        ->check(CLI::Range(2, 1 << 24));
    bench_cmd->add_option("--seed", o.seed, "Base seed");
    bench_cmd->add_option("--out", o.out_path, "Write <out>.json and <out>.csv");
    bench_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 1024));
    bench_cmd->add_option("--config", o.config, "JSON run config")->check(CLI::ExistingFile);

    auto* hist_cmd = app.add_subcommand("hist", "Histogram test of one-dimensional samples");
    hist_cmd->add_option("--input", o.input_path, "One-column CSV or MECB")
        ->required()
        ->check(CLI::ExistingFile);
    hist_cmd->add_option("--cdf", o.cdf, "none | normal | path to an (x, F) CSV table");
    hist_cmd->add_option("--tau", o.tau, "OOD threshold in bits");
    hist_cmd->add_option("--config", o.config, "JSON run config")->check(CLI::ExistingFile);

    auto* chi2_cmd = app.add_subcommand("chi2check", "Check the chi-square limit of the MLE gain");
    chi2_cmd->add_option("--n", o.n, "Dimension 1..4")->check(CLI::Range(1, 4));
    chi2_cmd->add_option("--M", o.chi2_M, "Batch size")->check(CLI::Range(2, 1 << 20));
    chi2_cmd->add_option("--trials", o.chi2_trials, "Number of batches")
        ->check(CLI::Range(1, 1 << 24));
    chi2_cmd->add_option("--seed", o.seed, "Base seed");
    chi2_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 1024));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*detect_cmd) return cmd_detect(o, out);
        if (*bench_cmd) return cmd_bench(o, out, err);
        if (*hist_cmd) return cmd_hist(o, out);
        return cmd_chi2check(o, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
}

}  // namespace mec::cli
