#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the library's estimators.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace oracle {

/// Maximizes log det T - tr(S T) over symmetric T with T_ij = 0 off `edges`
/// by damped Newton on the free entries. Returns the covariance inv(T).
inline Eigen::MatrixXd constrained_mle(const Eigen::MatrixXd& S,
                                       const std::vector<std::pair<int, int>>& edges) {
    const int n = static_cast<int>(S.rows());
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < n; ++i) free.emplace_back(i, i);
    for (const auto& e : edges) free.push_back(e);
    const int p = static_cast<int>(free.size());

    auto objective = [&](const Eigen::MatrixXd& T) {
        Eigen::LLT<Eigen::MatrixXd> llt(T);
        if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
        const Eigen::MatrixXd L = llt.matrixL();
        return 2.0 * L.diagonal().array().log().sum() - (S * T).trace();
    };
    auto unit = [&](int k) {
        Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
        E(free[k].first, free[k].second) = 1;
        E(free[k].second, free[k].first) = 1;
        return E;
    };

    Eigen::MatrixXd T = S.diagonal().cwiseInverse().asDiagonal();
    for (int iter = 0; iter < 200; ++iter) {
        const Eigen::MatrixXd W = T.inverse();
        Eigen::VectorXd g(p);
        Eigen::MatrixXd H(p, p);
        std::vector<Eigen::MatrixXd> E;
        for (int k = 0; k < p; ++k) E.push_back(unit(k));
        for (int a = 0; a < p; ++a) {
            g(a) = ((W - S) * E[a]).trace();
            for (int b = 0; b < p; ++b) H(a, b) = -(W * E[a] * W * E[b]).trace();
        }
        const Eigen::VectorXd step = H.ldlt().solve(-g);
        const double f0 = objective(T);
        double t = 1.0;
        Eigen::MatrixXd next = T;
        for (int k = 0; k < 60; ++k, t *= 0.5) {
            next = T;
            for (int a = 0; a < p; ++a) next += t * step(a) * E[a];
            if (objective(next) >= f0 - 1e-15) break;
        }
        T = next;
        if (g.lpNorm<Eigen::Infinity>() < 1e-13) break;
    }
    return T.inverse();
}

/// Multivariate normal log2-density computed from the explicit formula.
inline double normal_bits(const Eigen::MatrixXd& cov, const Eigen::VectorXd& x) {
    const double n = static_cast<double>(x.size());
    const double quad = x.dot(cov.inverse() * x);
    const double nats = 0.5 * (n * std::log(2 * std::numbers::pi) + std::log(cov.determinant()) + quad);
    return nats / std::numbers::ln2;
}

/// AUROC by enumerating all (positive, negative) pairs.
inline double pairwise_auroc(const std::vector<double>& pos, const std::vector<double>& neg) {
    double wins = 0;
    for (double p : pos) {
        for (double q : neg) wins += p > q ? 1.0 : (p == q ? 0.5 : 0.0);
    }
    return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

/// Random symmetric positive definite matrix with condition number bounded
/// by roughly (1 + spread) / 0.2.
template <typename Rng>
Eigen::MatrixXd random_spd(int n, Rng& rng, double spread = 2.0) {
    std::normal_distribution<double> z;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = z(rng);
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    const Eigen::MatrixXd Q = qr.householderQ();
    std::uniform_real_distribution<double> u(0.2, 0.2 + spread);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = u(rng);
    Eigen::MatrixXd S = Q * d.asDiagonal() * Q.transpose();
    return 0.5 * (S + S.transpose());
}

}  // namespace oracle
