#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mec/combine.hpp"

namespace mec {

/// Mann-Whitney estimate of P(pos > neg), ties counted 1/2. Equals the
/// trapezoidal area under the ROC curve.
double auroc(std::span<const double> positive, std::span<const double> negative);

enum class DefaultModelMode { analytic, fitted };

struct ExperimentConfig {
    int scenario = 1;
    int n = 6;
    int M = 25;
    int trials = 1000;
    std::uint64_t seed = 20240101;
    DetectConfig detect;
    DefaultModelMode default_model = DefaultModelMode::analytic;
    int fitted_draws = 10000;
    bool center_base = true;
    int jobs = 1;
    /// Draw the "anomalous" half from the default population too (null run).
    bool null_run = false;
};

struct TrialScore {
    int trial = 0;
    bool anomalous = false;
    std::uint64_t seed = 0;
    double score = 0.0;
};

struct BenchResult {
    double auroc = 0.5;
    std::vector<TrialScore> trials;
    double seconds = 0.0;
    ExperimentConfig config;
};

/// Odd-numbered trials draw from the anomalous population, even-numbered
/// from the default one. Trial t uses seed hash64(seed, t). A failing trial
/// aborts with its index in the message.
BenchResult run_experiment(const ExperimentConfig& config);

/// Distance sup_x |F_emp(x) - F(x)| of a sample to a reference CDF.
template <typename Cdf>
double ks_distance(std::vector<double> sample, Cdf&& cdf);

struct Chi2CheckConfig {
    int n = 1;
    int M = 200;
    int trials = 5000;
    std::uint64_t seed = 1;
    int jobs = 1;
    double threshold = 0.05;
};

enum class Chi2Verdict { pass, fail, inconclusive };

std::string_view to_string(Chi2Verdict v);

struct Chi2CheckResult {
    int dof = 1;
    double ks_distance = 0.0;
    /// 95% Kolmogorov critical value 1.358 / sqrt(trials). When it is at
    /// least the threshold the check cannot resolve a threshold-sized
    /// discrepancy and reports inconclusive.
    double critical_value = 0.0;
    double mean_statistic = 0.0;
    Chi2Verdict verdict = Chi2Verdict::inconclusive;
    Chi2CheckConfig config;
};

/// Draws N(0, I) batches and compares 2 ln 2 (L_default - L_mle), in nats,
/// with the chi-square law on n(n + 1)/2 degrees of freedom.
Chi2CheckResult chi2_check(const Chi2CheckConfig& config);

// ---------------------------------------------------------------------------

template <typename Cdf>
double ks_distance(std::vector<double> sample, Cdf&& cdf) {
    std::sort(sample.begin(), sample.end());
    const double count = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, f - static_cast<double>(i) / count,
                      static_cast<double>(i + 1) / count - f});
    }
    return d;
}

}  // namespace mec
