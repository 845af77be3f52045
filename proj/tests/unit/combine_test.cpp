#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mec/combine.hpp"
#include "mec/errors.hpp"
#include "mec/random.hpp"
#include "mec/synth.hpp"

namespace {

const double kC = mec::kLogStarConstant;
const double kInf = std::numeric_limits<double>::infinity();

std::vector<mec::CoderReport> random_reports(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 12);
    std::uniform_real_distribution<double> bits(-300, 300);
    std::uniform_real_distribution<double> model(0, 40);
    std::vector<mec::CoderReport> out;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) out.push_back({"r" + std::to_string(i), model(rng), bits(rng), i + 1});
    return out;
}

}  // namespace

TEST(SelectCombine, Examples) {
    const std::vector<mec::CoderReport> one = {{"a", 2, 10, 1}};
    EXPECT_DOUBLE_EQ(mec::select_combine(one).bits, 12 + kC);

    const std::vector<mec::CoderReport> two = {{"a", 2, 10, 1}, {"b", 2, 8, 2}};
    const auto s = mec::select_combine(two);
    EXPECT_DOUBLE_EQ(s.bits, 10 + mec::log_star(2));
    EXPECT_EQ(s.label, "b");

    const std::vector<mec::CoderReport> with_inf = {{"a", 0, kInf, 1}, {"b", 0, 1e6, 2}};
    EXPECT_EQ(mec::select_combine(with_inf).label, "b");

    const std::vector<mec::CoderReport> tie = {{"x", 0, 5, 3}, {"y", 0, 5, 3}};
    EXPECT_EQ(mec::select_combine(tie).label, "x");
    EXPECT_THROW(mec::select_combine({}), mec::DomainError);
}

TEST(WeightedCombine, Examples) {
    const std::vector<mec::CoderReport> one = {{"a", 2, 10, 1}};
    EXPECT_DOUBLE_EQ(mec::weighted_combine(one), mec::select_combine(one).bits);

    const std::vector<mec::CoderReport> same = {{"a", 0, 20, 1}, {"b", 0, 20, 1}};
    EXPECT_NEAR(mec::weighted_combine(same), 20 + kC - 1, 1e-12);

    const std::vector<mec::CoderReport> two = {{"a", 2, 10, 1}, {"b", 2, 9, 2}};
    const double naive = -std::log2(std::exp2(-12 - kC) + std::exp2(-11 - mec::log_star(2)));
    EXPECT_NEAR(mec::weighted_combine(two), naive, 1e-12);

    const std::vector<mec::CoderReport> infs = {{"a", 0, kInf, 1}, {"b", kInf, 0, 2}};
    EXPECT_EQ(mec::weighted_combine(infs), kInf);
    EXPECT_THROW(mec::weighted_combine({}), mec::DomainError);
}

TEST(WeightedCombine, NeverWorseThanSelection) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 2000; ++t) {
        const auto reports = random_reports(rng);
        ASSERT_LE(mec::weighted_combine(reports), mec::select_combine(reports).bits + 1e-9);
    }
}

TEST(WeightedCombine, AddingReportsHelps) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 500; ++t) {
        auto reports = random_reports(rng);
        const double before = mec::weighted_combine(reports);
        reports.push_back({"extra", 5, 100, static_cast<int>(reports.size()) + 1});
        ASSERT_LE(mec::weighted_combine(reports), before);
    }
}

TEST(WeightedCombine, ShiftsWithCommonConstant) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        auto reports = random_reports(rng);
        const double before = mec::weighted_combine(reports);
        for (auto& r : reports) r.data_bits += 123.25;
        ASSERT_NEAR(mec::weighted_combine(reports), before + 123.25, 1e-9);
    }
}

TEST(Detect, ResultInvariants) {
    const auto sc = mec::build_scenario(1);
    const auto model = mec::analytic_default_model(sc);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto batch = mec::sample_batch(sc, mec::Population::anomalous, 25, s);
        mec::DetectConfig cfg;
        cfg.tau = 3.0;
        const auto r = mec::detect(batch, model, cfg);
        EXPECT_EQ(r.score, r.default_bits - r.combined_bits);
        EXPECT_EQ(r.ood, r.combined_bits + 3.0 < r.default_bits);
        EXPECT_FALSE(r.selected);
        ASSERT_FALSE(r.per_model.empty());
        EXPECT_EQ(r.per_model.back().label, "gamma");
        EXPECT_EQ(r.per_model.back().index, static_cast<int>(r.per_model.size()));
        EXPECT_DOUBLE_EQ(r.default_bits, mec::default_gaussian_codelength(batch, model));
    }
}

TEST(Detect, SelectModeReportsLabel) {
    const auto sc = mec::build_scenario(2);
    const auto model = mec::analytic_default_model(sc);
    const auto batch = mec::sample_batch(sc, mec::Population::default_model, 25, 7);
    mec::DetectConfig cfg;
    cfg.combiner = mec::Combiner::select;
    const auto r = mec::detect(batch, model, cfg);
    ASSERT_TRUE(r.selected);
    cfg.combiner = mec::Combiner::weighted;
    EXPECT_LE(mec::detect(batch, model, cfg).combined_bits, r.combined_bits);
}

TEST(Detect, ThresholdDominates) {
    const auto sc = mec::build_scenario(1);
    const auto batch = mec::sample_batch(sc, mec::Population::default_model, 25, 1);
    mec::DetectConfig cfg;
    cfg.tau = -1e6;
    EXPECT_TRUE(mec::detect(batch, mec::analytic_default_model(sc), cfg).ood);
}

TEST(Detect, WhitenedModeMatchesCoordinates) {
    // whitening with the identity default is a no-op
    const auto sc = mec::build_scenario(1);
    const auto batch = mec::sample_batch(sc, mec::Population::anomalous, 25, 3);
    const auto id = mec::GaussianModel::standard(6);
    mec::DetectConfig raw;
    mec::DetectConfig white;
    white.whiten = true;
    const auto a = mec::detect(batch, id, raw);
    const auto b = mec::detect(batch, id, white);
    EXPECT_NEAR(a.score, b.score, 1e-9);
}

TEST(Detect, Preconditions) {
    const auto id = mec::GaussianModel::standard(3);
    EXPECT_THROW(mec::detect(mec::Batch(Eigen::MatrixXd::Ones(1, 3)), id), mec::DomainError);
    EXPECT_THROW(mec::detect(mec::Batch(Eigen::MatrixXd::Ones(4, 2)), id), mec::DataError);
}

TEST(Detect, DefaultBatchesRarelyFlagged) {
    const auto sc = mec::build_scenario(1);
    const auto model = mec::analytic_default_model(sc);
    mec::DetectConfig cfg;
    cfg.tau = 30;
    int flagged = 0;
    for (std::uint64_t t = 0; t < 300; ++t) {
        flagged += mec::detect(mec::sample_batch(sc, mec::Population::default_model, 25, mec::hash64(9, t)),
                               model, cfg)
                       .ood;
    }
    EXPECT_LE(flagged, 3);
}
