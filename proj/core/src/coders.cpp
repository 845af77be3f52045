#include "mec/coders.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "mec/errors.hpp"

namespace mec {
namespace {

constexpr double kLn2Pi = 1.8378770664093454836;  // ln(2 pi)

// Log-determinant of cov and its Cholesky factor, shared by every sample
// coded under the same model.
struct GaussianCoder {
    explicit GaussianCoder(const Eigen::MatrixXd& cov) : llt(cov) {
        if (llt.info() != Eigen::Success) {
            throw DomainError("Gaussian coder: covariance is not positive definite");
        }
        const Eigen::MatrixXd L = llt.matrixL();
        logdet = 2.0 * L.diagonal().array().log().sum();
        norm = 0.5 * (static_cast<double>(cov.rows()) * kLn2Pi + logdet);
    }

    Bits bits(const Eigen::Ref<const Eigen::VectorXd>& x) const {
        const double quad = llt.matrixL().solve(x).squaredNorm();
        return (norm + 0.5 * quad) / std::numbers::ln2;
    }

    Eigen::LLT<Eigen::MatrixXd> llt;
    double logdet = 0.0;
    double norm = 0.0;
};

void require_dim(const Batch& batch, const GaussianModel& model, const char* who) {
    if (batch.dim() != model.dim()) {
        throw DataError(std::string(who) + ": batch dimension " + std::to_string(batch.dim()) +
                        " does not match model dimension " + std::to_string(model.dim()));
    }
}

}  // namespace

Batch::Batch(Eigen::MatrixXd data) : data_(std::move(data)) {
    if (data_.rows() < 1) throw DataError("Batch: at least one sample is required");
    if (data_.cols() < 1) throw DataError("Batch: dimension must be at least 1");
    if (!data_.allFinite()) throw DataError("Batch: non-finite entries");
}

Bits gaussian_codelength(const GaussianModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != model.dim()) throw DataError("gaussian_codelength: dimension mismatch");
    return GaussianCoder(model.cov).bits(x);
}

Bits default_gaussian_codelength(const Batch& batch, const GaussianModel& model) {
    require_dim(batch, model, "default_gaussian_codelength");
    const GaussianCoder coder(model.cov);
    Bits total = 0.0;
    for (int i = 0; i < batch.size(); ++i) total += coder.bits(batch.data().row(i).transpose());
    return total;
}

Bits gaussian_mle_codelength(const Batch& batch) {
    const auto S = SampleCov::from_samples(batch.data());
    Eigen::LLT<Eigen::MatrixXd> llt(S.S);
    if (llt.info() != Eigen::Success) {
        throw DomainError("gaussian_mle_codelength: sample covariance is singular");
    }
    const Eigen::MatrixXd L = llt.matrixL();
    const double logdet = 2.0 * L.diagonal().array().log().sum();
    const double n = batch.dim();
    // sum_i x_i' S^-1 x_i = M tr(S^-1 S) = M n
    const double nats = 0.5 * batch.size() * (n * kLn2Pi + logdet + n);
    return nats / std::numbers::ln2;
}

Bits predictive_gaussian_bits(const Batch& batch, const CondIndepGraph& graph,
                              const GaussianModel& first_sample_model,
                              const UniversalGaussianOptions& opts) {
    require_dim(batch, first_sample_model, "predictive_gaussian_bits");
    const int n = batch.dim();
    if (graph.size() != n) throw DataError("predictive_gaussian_bits: graph size mismatch");
    const auto& X = batch.data();

    Bits total = gaussian_codelength(first_sample_model, X.row(0).transpose());
    Eigen::MatrixXd moment = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < batch.size(); ++i) {
        const Eigen::VectorXd prev = X.row(i - 1).transpose();
        moment.noalias() += prev * prev.transpose();
        SampleCov S{moment / static_cast<double>(i), static_cast<std::size_t>(i)};
        if (opts.prior_weight > 0.0) {
            const double w = opts.prior_weight;
            S.S = (moment + w * first_sample_model.cov) / (static_cast<double>(i) + w);
        } else {
            S = S.regularized();
        }
        const auto model = covariance_select(S, graph, opts.covsel);
        total += GaussianCoder(model.cov).bits(X.row(i).transpose());
    }
    return total;
}

std::vector<CoderReport> universal_gaussian_reports(const Batch& batch,
                                                    std::span<const double> lambdas,
                                                    const GaussianModel& first_sample_model,
                                                    int first_index,
                                                    const UniversalGaussianOptions& opts) {
    if (batch.size() < 2) {
        throw DomainError("universal_gaussian_reports: at least two samples are required");
    }
    require_dim(batch, first_sample_model, "universal_gaussian_reports");
    auto S = SampleCov::from_samples(batch.data());
    if (Eigen::LLT<Eigen::MatrixXd>(S.S).info() != Eigen::Success) S = S.regularized();

    std::vector<CoderReport> reports;
    int index = first_index;
    for (const auto& graph : glasso_path(S, lambdas, opts.glasso)) {
        CoderReport r;
        r.label = "gaussian" + graph.to_string();
        r.model_bits = graph_codelength(graph);
        r.data_bits = predictive_gaussian_bits(batch, graph, first_sample_model, opts);
        r.index = index++;
        reports.push_back(std::move(r));
    }
    return reports;
}

std::optional<GammaParams> fit_gamma(std::span<const double> values) {
    for (double v : values) {
        if (!(v > 0.0)) throw DomainError("fit_gamma: values must be positive");
    }
    if (values.size() < 2) return std::nullopt;
    double sum = 0.0;
    double sum_log = 0.0;
    for (double v : values) {
        sum += v;
        sum_log += std::log(v);
    }
    const double count = static_cast<double>(values.size());
    const double mean = sum / count;
    const double s = std::log(mean) - sum_log / count;
    if (!(s > 1e-12)) return std::nullopt;

    // Minka's starting point, then Newton on ln a - psi(a) = s.
    double shape = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
    for (int it = 0; it < 100; ++it) {
        const double f = std::log(shape) - digamma(shape) - s;
        const double fp = 1.0 / shape - trigamma(shape);
        double next = shape - f / fp;
        if (!(next > 0.0)) next = 0.5 * shape;
        const bool done = std::abs(next - shape) <= 1e-12 * shape;
        shape = next;
        if (done) {
            if (!std::isfinite(shape)) return std::nullopt;
            return GammaParams{shape, shape / mean};
        }
    }
    return std::nullopt;
}

double gamma_radial_log_density(const Eigen::Ref<const Eigen::VectorXd>& x, GammaParams params) {
    const double n = static_cast<double>(x.size());
    const double r2 = x.squaredNorm();
    if (!(r2 > 0.0)) throw DomainError("gamma_radial_log_density: zero-norm sample");
    const double a = params.shape;
    const double b = params.rate;
    return ln_gamma(0.5 * n) - 0.5 * n * std::log(std::numbers::pi) + a * std::log(b) -
           ln_gamma(a) + (a - 0.5 * n) * std::log(r2) - b * r2;
}

CoderReport gamma_report(const Batch& batch, const GaussianModel& first_sample_model, int index) {
    if (batch.size() < 2) throw DomainError("gamma_report: at least two samples are required");
    require_dim(batch, first_sample_model, "gamma_report");
    const auto& X = batch.data();
    std::vector<double> r2(batch.size());
    for (int i = 0; i < batch.size(); ++i) {
        r2[i] = X.row(i).squaredNorm();
        if (!(r2[i] > 0.0)) {
            throw DomainError("gamma_report: sample " + std::to_string(i) + " has zero norm");
        }
    }
    const GammaParams fallback = chi2_radial_params(batch.dim());
    Bits total = gaussian_codelength(first_sample_model, X.row(0).transpose());
    for (int i = 1; i < batch.size(); ++i) {
        const auto fitted = i >= 2 ? fit_gamma(std::span(r2).first(i)) : std::nullopt;
        const GammaParams params = fitted.value_or(fallback);
        total -= gamma_radial_log_density(X.row(i).transpose(), params) / std::numbers::ln2;
    }
    return CoderReport{"gamma", 0.0, total, index};
}

}  // namespace mec
