#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mec/coders.hpp"
#include "mec/covsel.hpp"
#include "mec/specfun.hpp"

namespace mec {

enum class Combiner { weighted, select };

/// Glasso regularization grid. An explicit value list wins; otherwise the
/// grid is derived from the batch's second moment.
struct LambdaGridSpec {
    std::vector<double> values;
    int count = 16;
    double min_ratio = 0.01;
    bool include_zero = true;

    std::vector<double> resolve(const SampleCov& S) const;
};

struct DetectConfig {
    LambdaGridSpec lambda_grid;
    Combiner combiner = Combiner::weighted;
    Bits tau = 0.0;
    /// Code the batch in the coordinates where the default model is N(0, I).
    /// Shifts every codelength by the same Jacobian term, so scores are
    /// unaffected by the shift itself; the universal coders see whitened data.
    bool whiten = false;
    bool use_gamma = true;
    UniversalGaussianOptions coder_options;
};

struct ModelBits {
    std::string label;
    int index = 1;
    Bits model_bits = 0.0;
    Bits data_bits = 0.0;
    Bits penalized_bits = 0.0;  ///< data + model + log*(index)
};

struct DetectionResult {
    Bits default_bits = 0.0;   ///< L
    Bits combined_bits = 0.0;  ///< L-hat
    Bits score = 0.0;          ///< L - L-hat; larger is more anomalous
    Bits tau = 0.0;
    bool ood = false;          ///< combined_bits + tau < default_bits
    std::optional<std::string> selected;
    std::vector<ModelBits> per_model;
};

struct Selection {
    Bits bits = 0.0;
    std::string label;
    int index = 1;
};

/// min_i data_i + model_i + log*(index_i); ties go to the smallest index.
Selection select_combine(std::span<const CoderReport> reports);

/// -log2 sum_i 2^-(data_i + model_i + log*(index_i)). Never exceeds
/// select_combine on the same reports.
Bits weighted_combine(std::span<const CoderReport> reports);

/// Full detection: default codelength, sparse-Gaussian reports along the
/// glasso path (indices 1..K), the Gamma radial report (index K + 1), and
/// the configured combiner. Requires at least two samples.
DetectionResult detect(const Batch& batch, const GaussianModel& default_model,
                       const DetectConfig& config = {});

}  // namespace mec
