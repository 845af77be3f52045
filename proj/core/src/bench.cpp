#include "mec/bench.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/random/normal_distribution.hpp>

#include "mec/errors.hpp"
#include "mec/parallel.hpp"
#include "mec/random.hpp"
#include "mec/synth.hpp"

namespace mec {

double auroc(std::span<const double> positive, std::span<const double> negative) {
    if (positive.empty() || negative.empty()) {
        throw DomainError("auroc: both score lists must be non-empty");
    }
    struct Entry {
        double score;
        bool positive;
    };
    std::vector<Entry> all;
    all.reserve(positive.size() + negative.size());
    for (double s : positive) all.push_back({s, true});
    for (double s : negative) all.push_back({s, false});
    for (const auto& e : all) {
        if (std::isnan(e.score)) throw DomainError("auroc: NaN score");
    }
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return a.score < b.score; });

    // Sum of (1-based, tie-averaged) ranks of the positive scores.
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        std::size_t pos_in_group = 0;
        while (j < all.size() && all[j].score == all[i].score) {
            pos_in_group += all[j].positive ? 1 : 0;
            ++j;
        }
        const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
        rank_sum += mid_rank * static_cast<double>(pos_in_group);
        i = j;
    }
    const double np = static_cast<double>(positive.size());
    const double nn = static_cast<double>(negative.size());
    return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

BenchResult run_experiment(const ExperimentConfig& config) {
    if (config.trials < 2 || config.trials % 2 != 0) {
        throw ConfigError("run_experiment: trials must be even and >= 2");
    }
    if (config.M < 2) throw ConfigError("run_experiment: M must be >= 2");

    const auto start = std::chrono::steady_clock::now();
    Scenario scenario = build_scenario(config.scenario, config.n);
    scenario.center_base = config.center_base;
    const GaussianModel default_model =
        config.default_model == DefaultModelMode::analytic
            ? analytic_default_model(scenario)
            : fitted_default_model(scenario, config.fitted_draws,
                                   hash64(config.seed, ~std::uint64_t{0}));

    BenchResult result;
    result.config = config;
    result.trials.resize(config.trials);
    parallel_for(static_cast<std::size_t>(config.trials), config.jobs, [&](std::size_t t) {
        TrialScore& out = result.trials[t];
        out.trial = static_cast<int>(t);
        out.anomalous = (t % 2) == 1;
        out.seed = hash64(config.seed, t);
        const Population pop = out.anomalous && !config.null_run ? Population::anomalous
                                                                 : Population::default_model;
        try {
            const Batch batch = sample_batch(scenario, pop, config.M, out.seed);
            out.score = detect(batch, default_model, config.detect).score;
        } catch (const std::exception& e) {
            throw std::runtime_error("trial " + std::to_string(t) + " failed: " + e.what());
        }
    });

    std::vector<double> pos;
    std::vector<double> neg;
    for (const auto& t : result.trials) (t.anomalous ? pos : neg).push_back(t.score);
    result.auroc = auroc(pos, neg);
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string_view to_string(Chi2Verdict v) {
    switch (v) {
        case Chi2Verdict::pass: return "pass";
        case Chi2Verdict::fail: return "fail";
        case Chi2Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

Chi2CheckResult chi2_check(const Chi2CheckConfig& config) {
    if (config.n < 1 || config.n > 4) throw ConfigError("chi2_check: n must lie in [1, 4]");
    if (config.M <= config.n) throw ConfigError("chi2_check: M must exceed n");
    if (config.trials < 1) throw ConfigError("chi2_check: trials must be >= 1");

    const int n = config.n;
    const auto standard = GaussianModel::standard(n);
    std::vector<double> stats(config.trials);
    parallel_for(static_cast<std::size_t>(config.trials), config.jobs, [&](std::size_t t) {
        CounterRng rng(hash64(config.seed, t));
        boost::random::normal_distribution<double> normal(0.0, 1.0);
        Eigen::MatrixXd X(config.M, n);
        for (int r = 0; r < config.M; ++r) {
            for (int c = 0; c < n; ++c) X(r, c) = normal(rng);
        }
        const Batch batch(std::move(X));
        const Bits gap = default_gaussian_codelength(batch, standard) - gaussian_mle_codelength(batch);
        stats[t] = 2.0 * std::numbers::ln2 * gap;
    });

    Chi2CheckResult result;
    result.config = config;
    result.dof = n * (n + 1) / 2;
    result.mean_statistic =
        std::accumulate(stats.begin(), stats.end(), 0.0) / static_cast<double>(stats.size());
    const int dof = result.dof;
    result.ks_distance =
        ks_distance(stats, [dof](double x) { return x <= 0.0 ? 0.0 : chi2_cdf(dof, x); });
    result.critical_value = 1.358 / std::sqrt(static_cast<double>(config.trials));
    if (result.critical_value >= config.threshold) {
        result.verdict = Chi2Verdict::inconclusive;
    } else {
        result.verdict = result.ks_distance < config.threshold ? Chi2Verdict::pass : Chi2Verdict::fail;
    }
    return result;
}

}  // namespace mec
