#include "mec/combine.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Cholesky>

#include "mec/errors.hpp"

namespace mec {

std::vector<double> LambdaGridSpec::resolve(const SampleCov& S) const {
    if (!values.empty()) {
        for (double v : values) {
            if (!(v >= 0.0)) throw ConfigError("lambda grid values must be >= 0");
        }
        return values;
    }
    return default_lambda_grid(S, count, min_ratio, include_zero);
}

Selection select_combine(std::span<const CoderReport> reports) {
    if (reports.empty()) throw DomainError("select_combine: no reports");
    const CoderReport* best = nullptr;
    Bits best_bits = std::numeric_limits<double>::infinity();
    for (const auto& r : reports) {
        const Bits b = r.penalized_bits();
        if (!best || b < best_bits || (b == best_bits && r.index < best->index)) {
            best = &r;
            best_bits = b;
        }
    }
    return Selection{best_bits, best->label, best->index};
}

Bits weighted_combine(std::span<const CoderReport> reports) {
    if (reports.empty()) throw DomainError("weighted_combine: no reports");
    std::vector<Bits> lengths;
    lengths.reserve(reports.size());
    for (const auto& r : reports) lengths.push_back(r.penalized_bits());
    return mixture_codelength(lengths);
}

DetectionResult detect(const Batch& batch, const GaussianModel& default_model,
                       const DetectConfig& config) {
    if (batch.dim() != default_model.dim()) {
        throw DataError("detect: batch dimension " + std::to_string(batch.dim()) +
                        " does not match default model dimension " +
                        std::to_string(default_model.dim()));
    }
    if (batch.size() < 2) throw DomainError("detect: at least two samples are required");

    DetectionResult result;
    result.tau = config.tau;
    result.default_bits = default_gaussian_codelength(batch, default_model);

    std::vector<CoderReport> reports;
    if (config.whiten) {
        // z = L^-1 x with cov = L L'; p_x(x) = p_z(z) / det L.
        const int n = batch.dim();
        Eigen::LLT<Eigen::MatrixXd> llt(default_model.cov);
        if (llt.info() != Eigen::Success) {
            throw DomainError("detect: default covariance is not positive definite");
        }
        const Eigen::MatrixXd L = llt.matrixL();
        const double log2_det = L.diagonal().array().log().sum() / std::numbers::ln2;
        const Eigen::MatrixXd Z =
            L.triangularView<Eigen::Lower>().solve(batch.data().transpose()).transpose();
        const Batch whitened(Z);
        const auto standard = GaussianModel::standard(n);
        const auto lambdas =
            config.lambda_grid.resolve(SampleCov::from_samples(whitened.data()));
        reports = universal_gaussian_reports(whitened, lambdas, standard, 1, config.coder_options);
        if (config.use_gamma) {
            reports.push_back(
                gamma_report(whitened, standard, static_cast<int>(reports.size()) + 1));
        }
        const double shift = batch.size() * log2_det;
        for (auto& r : reports) r.data_bits += shift;
    } else {
        const auto lambdas = config.lambda_grid.resolve(SampleCov::from_samples(batch.data()));
        reports = universal_gaussian_reports(batch, lambdas, default_model, 1, config.coder_options);
        if (config.use_gamma) {
            reports.push_back(
                gamma_report(batch, default_model, static_cast<int>(reports.size()) + 1));
        }
    }

    for (const auto& r : reports) {
        result.per_model.push_back(
            ModelBits{r.label, r.index, r.model_bits, r.data_bits, r.penalized_bits()});
    }
    if (config.combiner == Combiner::select) {
        const auto sel = select_combine(reports);
        result.combined_bits = sel.bits;
        result.selected = sel.label;
    } else {
        result.combined_bits = weighted_combine(reports);
    }
    result.score = result.default_bits - result.combined_bits;
    result.ood = result.combined_bits + result.tau < result.default_bits;
    return result;
}

}  // namespace mec
