#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

#include "mec/coders.hpp"
#include "mec/covsel.hpp"

namespace mec {

/// Independent base law of the mixed scenarios. Coordinate i (1-based)
/// uses scale i (Laplace, Logistic) or i + 4 degrees of freedom
/// (chi-square, Student t).
enum class BaseFamily { gaussian, laplace, logistic, chi_squared, student_t };

std::string_view to_string(BaseFamily f);

enum class Population { default_model, anomalous };

/// One of the six synthetic benchmark scenarios. Cases 1-2 are Gaussian
/// with the given precisions; cases 3-6 mix independent base draws with A.
struct Scenario {
    int id = 1;
    int n = 6;
    BaseFamily family = BaseFamily::gaussian;
    Eigen::MatrixXd default_precision;    // cases 1-2
    Eigen::MatrixXd anomalous_precision;  // cases 1-2
    Eigen::MatrixXd default_mixing;       // cases 3-6
    Eigen::MatrixXd anomalous_mixing;     // cases 3-6
    /// Subtract the analytic mean of each base coordinate (only the
    /// chi-square family has a nonzero one).
    bool center_base = true;

    bool gaussian() const noexcept { return family == BaseFamily::gaussian; }
};

/// Throws ConfigError for an id outside 1..6 or n < 6, DomainError if a
/// constructed precision is not positive definite.
Scenario build_scenario(int id, int n = 6);

/// Variance of base coordinate i (1-based).
double base_variance(BaseFamily family, int i);
/// Mean of base coordinate i (1-based) before centering.
double base_mean(BaseFamily family, int i);

/// Deterministic for a fixed seed.
Batch sample_batch(const Scenario& scenario, Population which, int M, std::uint64_t seed);

/// Gaussian moment match of the default population: inv(Omega) for cases
/// 1-2, A D A' with D the base variances for cases 3-6. Without centering
/// the zero-mean match of the second moment, A (D + m m') A', is used.
GaussianModel analytic_default_model(const Scenario& scenario);

/// Zero-mean second moment of `draws` default samples.
GaussianModel fitted_default_model(const Scenario& scenario, int draws, std::uint64_t seed);

}  // namespace mec
