#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mec/specfun.hpp"

namespace mec {

/// Undirected conditional independence graph over n variables. An absent
/// edge (i, j) means the precision entry (i, j) is zero.
class CondIndepGraph {
public:
    using Edge = std::pair<int, int>;  // always first < second

    CondIndepGraph() = default;
    explicit CondIndepGraph(int n);
    CondIndepGraph(int n, std::span<const Edge> edges);

    static CondIndepGraph complete(int n);
    /// Edges where |m(i, j)| > threshold, i < j.
    static CondIndepGraph support(const Eigen::MatrixXd& m, double threshold);

    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;

    int size() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    /// n (n - 1) / 2
    std::size_t max_edges() const noexcept;
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::vector<int> neighbors(int v) const;

    std::string to_string() const;

    friend bool operator==(const CondIndepGraph& a, const CondIndepGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;   // sorted
    std::vector<char> adj_;     // n * n
};

/// Zero-mean Gaussian with covariance, precision and the graph the precision
/// is supported on.
struct GaussianModel {
    Eigen::MatrixXd cov;
    Eigen::MatrixXd prec;
    CondIndepGraph graph;

    int dim() const noexcept { return static_cast<int>(cov.rows()); }

    /// Builds from a symmetric positive definite covariance. The graph is the
    /// support of the inverse (threshold 1e-8). Throws DomainError if not PD.
    static GaussianModel from_covariance(const Eigen::MatrixXd& cov);
    static GaussianModel from_precision(const Eigen::MatrixXd& prec);
    static GaussianModel standard(int n);
};

/// Zero-mean sample second moment S = X^T X / count.
struct SampleCov {
    Eigen::MatrixXd S;
    std::size_t count = 0;

    int dim() const noexcept { return static_cast<int>(S.rows()); }

    /// One sample per row of X.
    static SampleCov from_samples(const Eigen::Ref<const Eigen::MatrixXd>& X);

    /// S + eps I with eps = 1e-3 trace(S) / n. Keeps covariances from fewer
    /// samples than dimensions invertible.
    SampleCov regularized() const;
};

inline constexpr double kSupportThreshold = 1e-8;

struct GlassoOptions {
    double tol = 1e-7;
    int max_iter = 1000;
};

/// Graphical lasso: maximizes log det T - tr(S T) - lambda sum_{i != j} |T_ij|
/// by block coordinate descent on W = inv(T). Off-diagonal penalty only.
GaussianModel glasso(const SampleCov& S, double lambda, const GlassoOptions& opts = {});

/// Unique graphs along a lambda path, in order of first appearance.
std::vector<CondIndepGraph> glasso_path(const SampleCov& S, std::span<const double> lambdas,
                                        const GlassoOptions& opts = {});

/// `count` log-spaced values from max_{i != j} |S_ij| down to
/// min_ratio * max, then 0 if include_zero. Descending.
std::vector<double> default_lambda_grid(const SampleCov& S, int count = 16,
                                        double min_ratio = 0.01, bool include_zero = true);

struct CovSelectOptions {
    double tol = 1e-10;
    int max_iter = 100000;
};

/// Covariance selection: the unique PD covariance that matches S on the
/// diagonal and on graph edges and whose inverse vanishes off the graph.
GaussianModel covariance_select(const SampleCov& S, const CondIndepGraph& graph,
                                const CovSelectOptions& opts = {});

/// Two-part graph code: edge count uniformly over 0..n(n-1)/2, then the
/// edge subset uniformly among those with that count.
Bits graph_codelength(const CondIndepGraph& graph);

}  // namespace mec
