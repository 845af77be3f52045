#include "mec/synth.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <boost/random/chi_squared_distribution.hpp>
#include <boost/random/laplace_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/student_t_distribution.hpp>

#include "mec/errors.hpp"
#include "mec/random.hpp"

namespace mec {
namespace {

// Symmetric banded matrix with band[k] on the k-th off-diagonals.
Eigen::MatrixXd banded(int n, std::initializer_list<double> band) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    int k = 0;
    for (double v : band) {
        for (int i = k; i < n; ++i) {
            m(i, i - k) = v;
            m(i - k, i) = v;
        }
        ++k;
    }
    return m;
}

void require_pd(const Eigen::MatrixXd& m, const char* what) {
    if (Eigen::LLT<Eigen::MatrixXd>(m).info() != Eigen::Success) {
        throw DomainError(std::string("build_scenario: ") + what + " is not positive definite");
    }
}

double draw_base(BaseFamily family, int i, CounterRng& rng) {
    const double scale = static_cast<double>(i);
    const double dof = static_cast<double>(i + 4);
    switch (family) {
        case BaseFamily::gaussian:
            return boost::random::normal_distribution<double>(0.0, 1.0)(rng);
        case BaseFamily::laplace:
            return boost::random::laplace_distribution<double>(0.0, scale)(rng);
        case BaseFamily::logistic: {
            const double u = rng.uniform_open();
            return scale * std::log(u / (1.0 - u));
        }
        case BaseFamily::chi_squared:
            return boost::random::chi_squared_distribution<double>(dof)(rng);
        case BaseFamily::student_t:
            return boost::random::student_t_distribution<double>(dof)(rng);
    }
    return 0.0;
}

}  // namespace

std::string_view to_string(BaseFamily f) {
    switch (f) {
        case BaseFamily::gaussian: return "gaussian";
        case BaseFamily::laplace: return "laplace";
        case BaseFamily::logistic: return "logistic";
        case BaseFamily::chi_squared: return "chi_squared";
        case BaseFamily::student_t: return "student_t";
    }
    return "unknown";
}

Scenario build_scenario(int id, int n) {
    if (id < 1 || id > 6) throw ConfigError("scenario id must be in 1..6, got " + std::to_string(id));
    if (n < 6) throw ConfigError("scenario dimension must be >= 6, got " + std::to_string(n));

    Scenario s;
    s.id = id;
    s.n = n;
    if (id <= 2) {
        s.family = BaseFamily::gaussian;
        s.default_precision = banded(n, {1.0, 0.45});
        s.default_precision(0, n - 1) = 0.45;
        s.default_precision(n - 1, 0) = 0.45;
        s.anomalous_precision = id == 1 ? banded(n, {1.0, 0.45}) : banded(n, {1.0, 0.5, 0.25});
        require_pd(s.default_precision, "default precision");
        require_pd(s.anomalous_precision, "anomalous precision");
        return s;
    }
    constexpr BaseFamily families[] = {BaseFamily::laplace, BaseFamily::logistic,
                                       BaseFamily::chi_squared, BaseFamily::student_t};
    s.family = families[id - 3];
    s.default_mixing = banded(n, {1.0, 0.5, 0.25});
    s.anomalous_mixing = banded(n, {1.0, 0.4, 0.2, 0.2});
    for (const auto* A : {&s.default_mixing, &s.anomalous_mixing}) {
        if (std::abs(A->determinant()) < 1e-12) {
            throw DomainError("build_scenario: mixing matrix is singular");
        }
    }
    return s;
}

double base_variance(BaseFamily family, int i) {
    const double scale = static_cast<double>(i);
    const double dof = static_cast<double>(i + 4);
    switch (family) {
        case BaseFamily::gaussian: return 1.0;
        case BaseFamily::laplace: return 2.0 * scale * scale;
        case BaseFamily::logistic: return std::numbers::pi * std::numbers::pi * scale * scale / 3.0;
        case BaseFamily::chi_squared: return 2.0 * dof;
        case BaseFamily::student_t: return dof / (dof - 2.0);
    }
    return 0.0;
}

double base_mean(BaseFamily family, int i) {
    return family == BaseFamily::chi_squared ? static_cast<double>(i + 4) : 0.0;
}

Batch sample_batch(const Scenario& scenario, Population which, int M, std::uint64_t seed) {
    if (M < 1) throw ConfigError("sample_batch: M must be >= 1");
    const int n = scenario.n;
    CounterRng rng(seed);
    Eigen::MatrixXd X(M, n);
    if (scenario.gaussian()) {
        const auto& prec = which == Population::default_model ? scenario.default_precision
                                                              : scenario.anomalous_precision;
        const auto model = GaussianModel::from_precision(prec);
        const Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(model.cov).matrixL();
        boost::random::normal_distribution<double> normal(0.0, 1.0);
        Eigen::VectorXd z(n);
        for (int r = 0; r < M; ++r) {
            for (int i = 0; i < n; ++i) z(i) = normal(rng);
            X.row(r) = (L * z).transpose();
        }
    } else {
        const auto& A = which == Population::default_model ? scenario.default_mixing
                                                           : scenario.anomalous_mixing;
        Eigen::VectorXd base(n);
        for (int r = 0; r < M; ++r) {
            for (int i = 0; i < n; ++i) {
                base(i) = draw_base(scenario.family, i + 1, rng);
                if (scenario.center_base) base(i) -= base_mean(scenario.family, i + 1);
            }
            X.row(r) = (A * base).transpose();
        }
    }
    return Batch(std::move(X));
}

GaussianModel analytic_default_model(const Scenario& scenario) {
    if (scenario.gaussian()) return GaussianModel::from_precision(scenario.default_precision);
    const int n = scenario.n;
    Eigen::VectorXd mean(n);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        second(i, i) = base_variance(scenario.family, i + 1);
        mean(i) = scenario.center_base ? 0.0 : base_mean(scenario.family, i + 1);
    }
    second += mean * mean.transpose();
    const Eigen::MatrixXd& A = scenario.default_mixing;
    return GaussianModel::from_covariance(A * second * A.transpose());
}

GaussianModel fitted_default_model(const Scenario& scenario, int draws, std::uint64_t seed) {
    if (draws < scenario.n) throw ConfigError("fitted_default_model: need at least n draws");
    const auto batch = sample_batch(scenario, Population::default_model, draws, seed);
    return GaussianModel::from_covariance(SampleCov::from_samples(batch.data()).S);
}

}  // namespace mec
