#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "mec/combine.hpp"
#include "mec/covsel.hpp"
#include "mec/histogram.hpp"
#include "mec/synth.hpp"

namespace {

mec::SampleCov sample_cov(int n, int M) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    Eigen::MatrixXd X(M, n);
    for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = z(rng);
    for (int j = 1; j < n; ++j) X.col(j) += 0.5 * X.col(j - 1);
    return mec::SampleCov::from_samples(X);
}

void BM_Glasso(benchmark::State& state) {
    const auto S = sample_cov(static_cast<int>(state.range(0)), 200);
    const double lambda = 0.05;
    for (auto _ : state) benchmark::DoNotOptimize(mec::glasso(S, lambda));
}
BENCHMARK(BM_Glasso)->Arg(6)->Arg(12)->Arg(24);

void BM_CovarianceSelect(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto S = sample_cov(n, 200);
    mec::CondIndepGraph chain(n);
    for (int i = 1; i < n; ++i) chain.add_edge(i - 1, i);
    for (auto _ : state) benchmark::DoNotOptimize(mec::covariance_select(S, chain));
}
BENCHMARK(BM_CovarianceSelect)->Arg(6)->Arg(12)->Arg(24);

void BM_Detect(benchmark::State& state) {
    const auto sc = mec::build_scenario(1);
    const auto model = mec::analytic_default_model(sc);
    const auto batch = mec::sample_batch(sc, mec::Population::anomalous, static_cast<int>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(mec::detect(batch, model));
}
BENCHMARK(BM_Detect)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Histogram(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> x(state.range(0));
    for (double& v : x) v = u(rng);
    const auto grid = mec::histogram_grid();
    for (auto _ : state) benchmark::DoNotOptimize(mec::histogram_weighted_score(x, grid, 20));
}
BENCHMARK(BM_Histogram)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
