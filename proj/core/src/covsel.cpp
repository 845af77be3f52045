#include "mec/covsel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "mec/errors.hpp"

namespace mec {
namespace {

std::vector<int> all_but(int n, int j) {
    std::vector<int> idx;
    idx.reserve(n - 1);
    for (int i = 0; i < n; ++i) {
        if (i != j) idx.push_back(i);
    }
    return idx;
}

double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

double max_abs_offdiag(const Eigen::MatrixXd& m) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j) best = std::max(best, std::abs(m(i, j)));
        }
    }
    return best;
}

void require_square_symmetric(const Eigen::MatrixXd& S, const char* who) {
    if (S.rows() != S.cols() || S.rows() == 0) {
        throw DomainError(std::string(who) + ": matrix must be square and non-empty");
    }
    if (!S.allFinite()) throw DomainError(std::string(who) + ": non-finite entries");
    const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw DomainError(std::string(who) + ": matrix is not symmetric");
    }
}

bool is_positive_definite(const Eigen::MatrixXd& S) {
    Eigen::LLT<Eigen::MatrixXd> llt(S);
    return llt.info() == Eigen::Success;
}

// Precision from the regression coefficients of each column on the others:
// T_jj = 1 / (W_jj - w_12' beta), T_12 = -beta T_jj. Symmetrized.
Eigen::MatrixXd precision_from_coefficients(const Eigen::MatrixXd& W, const Eigen::MatrixXd& B) {
    const Eigen::Index n = W.rows();
    Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double quad = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k != j) quad += W(k, j) * B(k, j);
        }
        const double tjj = 1.0 / (W(j, j) - quad);
        theta(j, j) = tjj;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k != j) theta(k, j) = -B(k, j) * tjj;
        }
    }
    return 0.5 * (theta + theta.transpose());
}

double glasso_objective(const Eigen::MatrixXd& S, const Eigen::MatrixXd& theta, double lambda) {
    Eigen::LLT<Eigen::MatrixXd> llt(theta);
    if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
    const Eigen::MatrixXd L = llt.matrixL();
    const double logdet = 2.0 * L.diagonal().array().log().sum();
    const double penalty = theta.cwiseAbs().sum() - theta.diagonal().cwiseAbs().sum();
    return logdet - (S.cwiseProduct(theta)).sum() - lambda * penalty;
}

GaussianModel model_from_sparse_precision(Eigen::MatrixXd prec, const CondIndepGraph& graph) {
    const int n = static_cast<int>(prec.rows());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && !graph.has_edge(i, j)) prec(i, j) = 0.0;
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(prec);
    if (llt.info() != Eigen::Success) {
        throw DomainError("precision estimate is not positive definite");
    }
    Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(n, n));
    cov = 0.5 * (cov + cov.transpose());
    return GaussianModel{std::move(cov), std::move(prec), graph};
}

}  // namespace

// ---------------------------------------------------------------------------
// CondIndepGraph

CondIndepGraph::CondIndepGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw DomainError("CondIndepGraph: negative node count");
}

CondIndepGraph::CondIndepGraph(int n, std::span<const Edge> edges) : CondIndepGraph(n) {
    for (const auto& [i, j] : edges) add_edge(i, j);
}

CondIndepGraph CondIndepGraph::complete(int n) {
    CondIndepGraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    }
    return g;
}

CondIndepGraph CondIndepGraph::support(const Eigen::MatrixXd& m, double threshold) {
    const int n = static_cast<int>(m.rows());
    CondIndepGraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(m(i, j)) > threshold || std::abs(m(j, i)) > threshold) g.add_edge(i, j);
        }
    }
    return g;
}

void CondIndepGraph::add_edge(int i, int j) {
    if (i == j) throw DomainError("CondIndepGraph: self-loops are not allowed");
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
        throw DomainError("CondIndepGraph: node index out of range");
    }
    if (i > j) std::swap(i, j);
    if (adj_[static_cast<std::size_t>(i) * n_ + j]) return;
    adj_[static_cast<std::size_t>(i) * n_ + j] = 1;
    adj_[static_cast<std::size_t>(j) * n_ + i] = 1;
    const Edge e{i, j};
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
}

bool CondIndepGraph::has_edge(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) return false;
    return adj_[static_cast<std::size_t>(i) * n_ + j] != 0;
}

std::size_t CondIndepGraph::max_edges() const noexcept {
    return static_cast<std::size_t>(n_) * (n_ > 0 ? n_ - 1 : 0) / 2;
}

std::vector<int> CondIndepGraph::neighbors(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n_; ++u) {
        if (has_edge(v, u)) out.push_back(u);
    }
    return out;
}

std::string CondIndepGraph::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        if (k) os << ',';
        os << edges_[k].first << '-' << edges_[k].second;
    }
    os << '}';
    return os.str();
}

// ---------------------------------------------------------------------------
// GaussianModel / SampleCov

GaussianModel GaussianModel::from_covariance(const Eigen::MatrixXd& cov) {
    require_square_symmetric(cov, "GaussianModel");
    const Eigen::Index n = cov.rows();
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw DomainError("GaussianModel: covariance is not positive definite");
    }
    Eigen::MatrixXd prec = llt.solve(Eigen::MatrixXd::Identity(n, n));
    prec = 0.5 * (prec + prec.transpose());
    auto graph = CondIndepGraph::support(prec, kSupportThreshold);
    return GaussianModel{0.5 * (cov + cov.transpose()), std::move(prec), std::move(graph)};
}

GaussianModel GaussianModel::from_precision(const Eigen::MatrixXd& prec) {
    require_square_symmetric(prec, "GaussianModel");
    const Eigen::Index n = prec.rows();
    Eigen::LLT<Eigen::MatrixXd> llt(prec);
    if (llt.info() != Eigen::Success) {
        throw DomainError("GaussianModel: precision is not positive definite");
    }
    Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(n, n));
    cov = 0.5 * (cov + cov.transpose());
    auto graph = CondIndepGraph::support(prec, kSupportThreshold);
    return GaussianModel{std::move(cov), 0.5 * (prec + prec.transpose()), std::move(graph)};
}

GaussianModel GaussianModel::standard(int n) {
    return GaussianModel{Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Identity(n, n),
                         CondIndepGraph(n)};
}

SampleCov SampleCov::from_samples(const Eigen::Ref<const Eigen::MatrixXd>& X) {
    if (X.rows() == 0) throw DomainError("SampleCov: no samples");
    Eigen::MatrixXd S = X.transpose() * X / static_cast<double>(X.rows());
    S = 0.5 * (S + S.transpose());
    return SampleCov{std::move(S), static_cast<std::size_t>(X.rows())};
}

SampleCov SampleCov::regularized() const {
    const double eps = 1e-3 * S.trace() / static_cast<double>(S.rows());
    SampleCov out = *this;
    out.S.diagonal().array() += eps;
    return out;
}

// ---------------------------------------------------------------------------
// Graphical lasso

GaussianModel glasso(const SampleCov& sample, double lambda, const GlassoOptions& opts) {
    const Eigen::MatrixXd& S = sample.S;
    require_square_symmetric(S, "glasso");
    if (!(lambda >= 0.0)) throw DomainError("glasso: lambda must be >= 0");
    const int n = static_cast<int>(S.rows());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S, Eigen::EigenvaluesOnly);
    const double scale = std::max(S.diagonal().maxCoeff(), std::numeric_limits<double>::min());
    if (eig.eigenvalues().minCoeff() < -1e-10 * scale) {
        throw DomainError("glasso: sample covariance is not positive semidefinite");
    }
    if (S.diagonal().minCoeff() <= 0.0) {
        throw DomainError("glasso: sample covariance has a zero variance");
    }
    if (lambda == 0.0 && !is_positive_definite(S)) {
        throw DomainError("glasso: lambda = 0 requires a positive definite covariance");
    }

    Eigen::MatrixXd W = S;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    if (n == 1) {
        Eigen::MatrixXd prec(1, 1);
        prec(0, 0) = 1.0 / S(0, 0);
        return model_from_sparse_precision(prec, CondIndepGraph(1));
    }

    const double inner_tol = opts.tol * 1e-3;
    double prev_obj = -std::numeric_limits<double>::infinity();
    Eigen::MatrixXd theta;
    bool converged = false;
    for (int sweep = 0; sweep < opts.max_iter; ++sweep) {
        const Eigen::MatrixXd W_old = W;
        for (int j = 0; j < n; ++j) {
            const auto idx = all_but(n, j);
            const Eigen::MatrixXd W11 = W(idx, idx);
            const Eigen::VectorXd s12 = S(idx, j);
            Eigen::VectorXd beta = B(idx, j);
            // Lasso subproblem: min 1/2 b'W11 b - b's12 + lambda |b|_1.
            for (int it = 0; it < 10000; ++it) {
                double delta = 0.0;
                for (int k = 0; k < n - 1; ++k) {
                    const double partial = s12(k) - W11.row(k).dot(beta) + W11(k, k) * beta(k);
                    const double updated = soft_threshold(partial, lambda) / W11(k, k);
                    delta = std::max(delta, std::abs(updated - beta(k)));
                    beta(k) = updated;
                }
                if (delta < inner_tol) break;
            }
            const Eigen::VectorXd w12 = W11 * beta;
            W(idx, std::vector<int>{j}) = w12;
            W(std::vector<int>{j}, idx) = w12.transpose();
            B(idx, std::vector<int>{j}) = beta;
        }
        theta = precision_from_coefficients(W, B);
        const double obj = glasso_objective(S, theta, lambda);
        const double change = (W - W_old).cwiseAbs().maxCoeff();
        if (std::abs(obj - prev_obj) < opts.tol && change < opts.tol) {
            converged = true;
            break;
        }
        prev_obj = obj;
    }
    if (!converged) {
        throw NotConverged("glasso: no convergence after " + std::to_string(opts.max_iter) +
                               " sweeps",
                           theta);
    }
    auto graph = CondIndepGraph::support(theta, kSupportThreshold);
    return model_from_sparse_precision(std::move(theta), graph);
}

std::vector<CondIndepGraph> glasso_path(const SampleCov& S, std::span<const double> lambdas,
                                        const GlassoOptions& opts) {
    if (lambdas.empty()) throw DomainError("glasso_path: empty lambda grid");
    std::vector<CondIndepGraph> graphs;
    for (double lambda : lambdas) {
        auto model = glasso(S, lambda, opts);
        if (std::find(graphs.begin(), graphs.end(), model.graph) == graphs.end()) {
            graphs.push_back(std::move(model.graph));
        }
    }
    return graphs;
}

std::vector<double> default_lambda_grid(const SampleCov& S, int count, double min_ratio,
                                        bool include_zero) {
    if (count < 0) throw DomainError("default_lambda_grid: negative count");
    if (!(min_ratio > 0.0 && min_ratio <= 1.0)) {
        throw DomainError("default_lambda_grid: min_ratio must lie in (0, 1]");
    }
    std::vector<double> grid;
    const double top = max_abs_offdiag(S.S);
    if (top > 0.0) {
        for (int k = 0; k < count; ++k) {
            const double frac = count > 1 ? static_cast<double>(k) / (count - 1) : 0.0;
            grid.push_back(top * std::pow(min_ratio, frac));
        }
    }
    if (include_zero || grid.empty()) grid.push_back(0.0);
    return grid;
}

// ---------------------------------------------------------------------------
// Covariance selection

GaussianModel covariance_select(const SampleCov& sample, const CondIndepGraph& graph,
                                const CovSelectOptions& opts) {
    const Eigen::MatrixXd& S = sample.S;
    require_square_symmetric(S, "covariance_select");
    const int n = static_cast<int>(S.rows());
    if (graph.size() != n) throw DomainError("covariance_select: graph size does not match S");
    if (!is_positive_definite(S)) {
        throw DomainError("covariance_select: sample covariance is not positive definite");
    }

    std::vector<std::vector<int>> nbrs(n);
    std::vector<std::vector<int>> rest(n);
    for (int j = 0; j < n; ++j) {
        nbrs[j] = graph.neighbors(j);
        rest[j] = all_but(n, j);
    }

    Eigen::MatrixXd W = S;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    const double scale = S.diagonal().maxCoeff();
    bool converged = n == 1;
    for (int sweep = 0; sweep < opts.max_iter && !converged; ++sweep) {
        double change = 0.0;
        for (int j = 0; j < n; ++j) {
            const auto& nb = nbrs[j];
            const auto& others = rest[j];
            Eigen::VectorXd w12 = Eigen::VectorXd::Zero(n - 1);
            B.col(j).setZero();
            if (!nb.empty()) {
                const Eigen::MatrixXd Wnn = W(nb, nb);
                const Eigen::VectorXd snb = S(nb, j);
                const Eigen::VectorXd beta = Wnn.llt().solve(snb);
                w12 = W(others, nb) * beta;
                for (std::size_t k = 0; k < nb.size(); ++k) B(nb[k], j) = beta(k);
            }
            for (int k = 0; k < n - 1; ++k) {
                const int r = others[k];
                change = std::max(change, std::abs(W(r, j) - w12(k)));
                W(r, j) = w12(k);
                W(j, r) = w12(k);
            }
        }
        if (change < opts.tol * scale) converged = true;
    }
    if (!converged) {
        throw NotConverged("covariance_select: no convergence after " +
                               std::to_string(opts.max_iter) + " sweeps",
                           W);
    }
    Eigen::MatrixXd prec = precision_from_coefficients(W, B);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && !graph.has_edge(i, j)) prec(i, j) = 0.0;
        }
    }
    return GaussianModel{0.5 * (W + W.transpose()), std::move(prec), graph};
}

Bits graph_codelength(const CondIndepGraph& graph) {
    const auto total = static_cast<std::uint64_t>(graph.max_edges());
    return std::log2(static_cast<double>(total) + 1.0) + log_binomial(total, graph.edge_count());
}

}  // namespace mec
