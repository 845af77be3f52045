#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mec/errors.hpp"
#include "mec/histogram.hpp"

namespace {

std::vector<double> uniform_batch(int M, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, hi);
    std::vector<double> v(M);
    for (double& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST(KtBits, SmallValues) {
    const std::vector<std::uint64_t> zeros(7, 0);
    EXPECT_EQ(mec::kt_bits(zeros, 1), 0.0);
    const std::vector<std::uint64_t> one = {0};
    EXPECT_DOUBLE_EQ(mec::kt_bits(one, 2), 1.0);
    // 0 then 0: 1/2 * (3/2)/2
    const std::vector<std::uint64_t> two = {0, 0};
    EXPECT_NEAR(mec::kt_bits(two, 2), -std::log2(0.5 * 0.75), 1e-14);
    const std::vector<std::uint64_t> bad = {3};
    EXPECT_THROW(mec::kt_bits(bad, 3), mec::DomainError);
}

TEST(KtBits, KraftEqualityExhaustive) {
    for (std::uint64_t b = 1; b <= 3; ++b) {
        for (int M = 1; M <= 5; ++M) {
            std::vector<std::uint64_t> seq(M, 0);
            double total = 0;
            for (;;) {
                total += std::exp2(-mec::kt_bits(seq, b));
                int k = 0;
                while (k < M && ++seq[k] == b) seq[k++] = 0;
                if (k == M) break;
            }
            EXPECT_NEAR(total, 1.0, 1e-12) << b << " " << M;
        }
    }
}

TEST(HistogramCodelength, OneBinIsFree) {
    std::mt19937_64 rng(1);
    for (int M : {1, 5, 100}) EXPECT_EQ(mec::histogram_codelength(uniform_batch(M, 1, rng), 1), 0.0);
}

TEST(HistogramCodelength, TwoBinsByHand) {
    const std::vector<double> u = {0.1, 0.2, 0.6, 0.7};
    EXPECT_NEAR(mec::histogram_codelength(u, 2), 1.0, 1e-14);
}

TEST(HistogramCodelength, ManyBinsThreeStep) {
    const std::uint64_t m = std::uint64_t{1} << 20;
    const std::vector<double> u = {0.1, 0.5, 0.9};
    const std::vector<std::uint64_t> ranks = {0, 1, 2};
    const double want = std::log2(3.0) + mec::log_binomial(m, 3) + mec::kt_bits(ranks, 3) - 3 * 20.0;
    const double got = mec::histogram_codelength(u, m);
    EXPECT_NEAR(got, want, 1e-9);
    EXPECT_GT(got, 0.0);
}

TEST(HistogramCodelength, RejectsBadInput) {
    const std::vector<double> out = {0.2, 1.0};
    const std::vector<double> ok = {0.2};
    EXPECT_THROW(mec::histogram_codelength(out, 4), mec::DomainError);
    EXPECT_THROW(mec::histogram_codelength(ok, 0), mec::DomainError);
}

TEST(HistogramGrid, PowersOfTwo) {
    const auto g = mec::histogram_grid(5);
    EXPECT_EQ(g, (std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32}));
    EXPECT_EQ(mec::histogram_grid().size(), 41u);
    EXPECT_THROW(mec::histogram_grid(63), mec::DomainError);
}

TEST(HistogramScore, DuplicateShortCircuits) {
    const std::vector<double> u = {0.1, 0.3, 0.7, 0.3};
    const auto grid = mec::histogram_grid();
    for (double tau : {0.0, 20.0, 1e6}) {
        const auto s = mec::histogram_weighted_score(u, grid, tau);
        EXPECT_TRUE(s.duplicate);
        EXPECT_TRUE(s.ood);
        EXPECT_EQ(s.score, std::numeric_limits<double>::infinity());
    }
    EXPECT_THROW(mec::histogram_weighted_score(u, {}, 0.0), mec::DomainError);
}

TEST(HistogramScore, ScoreIsNegatedMixture) {
    std::mt19937_64 rng(2);
    const auto u = uniform_batch(30, 1, rng);
    const auto grid = mec::histogram_grid(10);
    std::vector<double> lengths;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        lengths.push_back(mec::histogram_codelength(u, grid[k]) + mec::log_star(k + 1.0));
    }
    const auto s = mec::histogram_weighted_score(u, grid, 3.0);
    EXPECT_NEAR(s.combined_bits, mec::mixture_codelength(lengths), 1e-10);
    EXPECT_EQ(s.score, -s.combined_bits);
    EXPECT_EQ(s.ood, s.combined_bits + 3.0 < 0.0);
}

TEST(HistogramScore, UniformRarelyFlagged) {
    std::mt19937_64 rng(3);
    const auto grid = mec::histogram_grid();
    int flagged = 0;
    for (int t = 0; t < 300; ++t) flagged += mec::histogram_weighted_score(uniform_batch(100, 1, rng), grid, 20).ood;
    EXPECT_LE(flagged, 3);
}

TEST(HistogramScore, HalfIntervalDetected) {
    std::mt19937_64 rng(4);
    const auto grid = mec::histogram_grid();
    int flagged = 0;
    for (int t = 0; t < 300; ++t) {
        flagged += mec::histogram_weighted_score(uniform_batch(100, 0.5, rng), grid, 0).ood;
    }
    EXPECT_GE(flagged, 285);
}

TEST(CdfTransform, NormalSamplesBecomeUniform) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z;
    int rejections = 0;
    const int M = 200;
    for (int t = 0; t < 200; ++t) {
        std::vector<double> x(M);
        for (double& v : x) v = z(rng);
        auto u = mec::cdf_transform(x, mec::normal_cdf);
        std::sort(u.begin(), u.end());
        double d = 0;
        for (int i = 0; i < M; ++i) d = std::max({d, u[i] - double(i) / M, double(i + 1) / M - u[i]});
        rejections += d > 1.63 / std::sqrt(double(M));
    }
    EXPECT_LE(rejections, 6);
}

TEST(CdfTransform, IdentityAndClamping) {
    const std::vector<double> x = {0.0, 0.25, 0.999};
    EXPECT_EQ(mec::cdf_transform(x, [](double v) { return v; }), x);
    const std::vector<double> zeros = {0.0, 0.0};
    EXPECT_EQ(mec::cdf_transform(zeros, [](double) { return 0.0; }), zeros);
    const std::vector<double> top = {5.0};
    const auto u = mec::cdf_transform(top, [](double) { return 1.0; });
    EXPECT_LT(u[0], 1.0);
    EXPECT_EQ(u[0], 1.0 - std::exp2(-52));
}

TEST(CdfTransform, RejectsDecreasingCdf) {
    const std::vector<double> x = {0.1, 0.2};
    EXPECT_THROW(mec::cdf_transform(x, [](double v) { return 1.0 - v; }), mec::DomainError);
    EXPECT_THROW(mec::cdf_transform(x, [](double) { return std::nan(""); }), mec::DomainError);
}
