#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mec/covsel.hpp"
#include "mec/specfun.hpp"

namespace mec {

/// M samples of dimension n, one sample per row. All entries finite, M >= 1.
class Batch {
public:
    explicit Batch(Eigen::MatrixXd data);

    int dim() const noexcept { return static_cast<int>(data_.cols()); }
    int size() const noexcept { return static_cast<int>(data_.rows()); }
    const Eigen::MatrixXd& data() const noexcept { return data_; }
    Eigen::VectorXd sample(int i) const { return data_.row(i).transpose(); }

private:
    Eigen::MatrixXd data_;
};

/// One universal coder's contribution to the combined codelength: the model
/// description, the data given the model, and the coder's position in the
/// enumeration (coded with log*).
struct CoderReport {
    std::string label;
    Bits model_bits = 0.0;
    Bits data_bits = 0.0;
    int index = 1;

    Bits penalized_bits() const { return data_bits + model_bits + log_star(index); }
};

/// -log2 N(x; 0, cov) for one sample.
Bits gaussian_codelength(const GaussianModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

/// -sum_i log2 N(x_i; 0, cov) over the batch. Throws DataError on a
/// dimension mismatch.
Bits default_gaussian_codelength(const Batch& batch, const GaussianModel& model);

/// Plug-in codelength under the zero-mean Gaussian whose covariance is the
/// batch's own second moment (full graph, no parameter cost).
Bits gaussian_mle_codelength(const Batch& batch);

struct UniversalGaussianOptions {
    GlassoOptions glasso;
    CovSelectOptions covsel;
    /// Pseudo-sample weight of the first-sample (default) covariance in the
    /// prefix estimate, (i S_i + w Sigma_0) / (i + w). Zero selects the
    /// ridge S_i + eps I, eps = 1e-3 tr(S_i) / n.
    double prior_weight = 1.0;
};

/// Predictive codelength of the batch under graph-constrained Gaussians:
/// x_1 is coded with first_sample_model, each later x_{i+1} with the
/// covariance selected on the regularized second moment of x_1..x_i.
Bits predictive_gaussian_bits(const Batch& batch, const CondIndepGraph& graph,
                              const GaussianModel& first_sample_model,
                              const UniversalGaussianOptions& opts = {});

/// One report per unique graph on the glasso path of the batch's second
/// moment. Indices run first_index, first_index + 1, ... in path order.
std::vector<CoderReport> universal_gaussian_reports(const Batch& batch,
                                                    std::span<const double> lambdas,
                                                    const GaussianModel& first_sample_model,
                                                    int first_index = 1,
                                                    const UniversalGaussianOptions& opts = {});

struct GammaParams {
    double shape = 1.0;
    double rate = 1.0;
};

/// Maximum likelihood Gamma fit. Returns nullopt for fewer than two values,
/// (numerically) identical values, or a Newton iteration that fails to
/// converge within 100 steps. Throws DomainError on a non-positive value.
std::optional<GammaParams> fit_gamma(std::span<const double> values);

/// Log density (nats) of x under the radially Gamma distributed,
/// directionally uniform law whose squared radius is Gamma(shape, rate).
double gamma_radial_log_density(const Eigen::Ref<const Eigen::VectorXd>& x, GammaParams params);

/// Shape/rate under which the radial law is N(0, I): chi-square with n dof.
inline GammaParams chi2_radial_params(int n) { return {0.5 * n, 0.5}; }

/// Universal radial coder: predictive codelength with sequential Gamma MLE
/// of the squared norms. model_bits is 0.
CoderReport gamma_report(const Batch& batch, const GaussianModel& first_sample_model, int index);

}  // namespace mec
