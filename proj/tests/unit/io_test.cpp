#include <bit>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "mec/config.hpp"
#include "mec/errors.hpp"
#include "mec/io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / ("mec_io_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream(p) << s;
}

Eigen::MatrixXd awkward_values() {
    Eigen::MatrixXd m(4, 3);
    m << 0.1, -0.0, 1e-310, std::numeric_limits<double>::max(), 1.0 / 3, -2.5e-17,
        std::numeric_limits<double>::min(), 123456789.123456789, -7, 0.30000000000000004, 5e-324, 1;
    return m;
}

}  // namespace

TEST(Csv, HeaderDetectionAndParsing) {
    std::istringstream with_header("a,b\n1,2\n3.5,-4e2\n");
    const auto m = mec::io::read_csv(with_header);
    ASSERT_EQ(m.rows(), 2);
    EXPECT_EQ(m(1, 1), -400.0);
    std::istringstream plain("1, 2\n\n3,4\n");
    EXPECT_EQ(mec::io::read_csv(plain).rows(), 2);
    std::istringstream ragged("1,2\n3\n");
    EXPECT_THROW(mec::io::read_csv(ragged), mec::DataError);
    std::istringstream junk("1,2\n3,x\n");
    EXPECT_THROW(mec::io::read_csv(junk), mec::DataError);
    std::istringstream empty("x,y\n");
    EXPECT_THROW(mec::io::read_csv(empty), mec::DataError);
}

TEST(Csv, RoundTripIsExact) {
    const Eigen::MatrixXd m = awkward_values();
    std::stringstream ss;
    mec::io::write_csv(ss, m);
    const auto back = mec::io::read_csv(ss);
    ASSERT_EQ(back.rows(), m.rows());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        EXPECT_EQ(std::bit_cast<std::uint64_t>(back.data()[i]), std::bit_cast<std::uint64_t>(m.data()[i]));
    }
}

TEST(Mecb, LayoutIsLittleEndianRowMajor) {
    Eigen::MatrixXd m(2, 1);
    m << 1.0, -2.0;
    std::stringstream ss;
    mec::io::write_mecb(ss, m);
    const std::string bytes = ss.str();
    ASSERT_EQ(bytes.size(), 4u + 8u + 16u);
    EXPECT_EQ(bytes.substr(0, 4), "MECB");
    EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1);   // n
    EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 2);   // M
    EXPECT_EQ(static_cast<unsigned char>(bytes[19]), 0x3f);  // 1.0 high byte
    EXPECT_EQ(static_cast<unsigned char>(bytes[27]), 0xc0);  // -2.0 high byte
}

TEST(Mecb, CsvMecbCsvRoundTrip) {
    const auto dir = scratch_dir();
    const Eigen::MatrixXd m = awkward_values();
    mec::io::write_samples(dir / "a.csv", m);
    const auto from_csv = mec::io::read_samples(dir / "a.csv");
    mec::io::write_samples(dir / "b.mecb", from_csv);
    const auto from_mecb = mec::io::read_samples(dir / "b.mecb");
    mec::io::write_samples(dir / "c.csv", from_mecb);
    const auto again = mec::io::read_samples(dir / "c.csv");
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        EXPECT_EQ(std::bit_cast<std::uint64_t>(again.data()[i]), std::bit_cast<std::uint64_t>(m.data()[i]));
    }
    std::istringstream truncated(std::string("MECB\x02\0\0\0\x02\0\0\0", 12));
    EXPECT_THROW(mec::io::read_mecb(truncated), mec::DataError);
    fs::remove_all(dir);
}

TEST(Covariance, SymmetrizedAndChecked) {
    const auto dir = scratch_dir();
    write_text(dir / "ok.csv", "2,0.5\n0.3,1\n");
    const auto m = mec::io::read_covariance(dir / "ok.csv");
    EXPECT_DOUBLE_EQ(m.cov(0, 1), 0.4);
    EXPECT_DOUBLE_EQ(m.cov(1, 0), 0.4);
    write_text(dir / "bad.csv", "1,2\n2,1\n");
    EXPECT_THROW(mec::io::read_covariance(dir / "bad.csv"), mec::DataError);
    write_text(dir / "rect.csv", "1,0,0\n0,1,0\n");
    EXPECT_THROW(mec::io::read_covariance(dir / "rect.csv"), mec::DataError);
    EXPECT_THROW(mec::io::read_covariance(dir / "missing.csv"), mec::DataError);
    fs::remove_all(dir);
}

TEST(CdfTable, Interpolates) {
    const mec::io::TabulatedCdf f({0.0, 1.0, 3.0}, {0.0, 0.5, 1.0});
    EXPECT_EQ(f(-1.0), 0.0);
    EXPECT_DOUBLE_EQ(f(0.5), 0.25);
    EXPECT_DOUBLE_EQ(f(2.0), 0.75);
    EXPECT_EQ(f(10.0), 1.0);
    EXPECT_THROW(mec::io::TabulatedCdf({0.0, 0.0}, {0.1, 0.2}), mec::DataError);
    EXPECT_THROW(mec::io::TabulatedCdf({0.0, 1.0}, {0.5, 0.2}), mec::DataError);
    EXPECT_THROW(mec::io::TabulatedCdf({0.0}, {1.5}), mec::DataError);
}

TEST(Config, ParsesAllKeys) {
    const auto cfg = mec::parse_run_config(nlohmann::json::parse(R"({
        "lambda_grid": [0.5, 0.1, 0],
        "combiner": "select",
        "tau": 12.5,
        "whiten": true,
        "use_gamma": false,
        "prior_weight": 0,
        "m_grid_max_exponent": 20,
        "seed": 42,
        "scenario": {"n": 8, "default_model": "fitted", "fitted_draws": 500, "center_base": false}
    })"));
    EXPECT_EQ(cfg.detect.lambda_grid.values.size(), 3u);
    EXPECT_EQ(cfg.detect.combiner, mec::Combiner::select);
    EXPECT_EQ(cfg.detect.tau, 12.5);
    EXPECT_TRUE(cfg.detect.whiten);
    EXPECT_FALSE(cfg.detect.use_gamma);
    EXPECT_EQ(cfg.detect.coder_options.prior_weight, 0.0);
    EXPECT_EQ(cfg.m_grid_max_exponent, 20);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_EQ(cfg.n, 8);
    EXPECT_EQ(cfg.default_model, mec::DefaultModelMode::fitted);
    EXPECT_EQ(cfg.fitted_draws, 500);
    EXPECT_FALSE(cfg.center_base);

    const auto again = mec::parse_run_config(mec::to_json(cfg));
    EXPECT_EQ(mec::to_json(again), mec::to_json(cfg));
}

TEST(Config, DefaultsAndGridObject) {
    const auto cfg = mec::parse_run_config(nlohmann::json::parse(
        R"({"lambda_grid": {"count": 4, "min_ratio": 0.1, "include_zero": false}})"));
    EXPECT_TRUE(cfg.detect.lambda_grid.values.empty());
    EXPECT_EQ(cfg.detect.lambda_grid.count, 4);
    EXPECT_FALSE(cfg.detect.lambda_grid.include_zero);
    EXPECT_FALSE(cfg.detect.whiten);
    EXPECT_EQ(cfg.detect.coder_options.prior_weight, 1.0);
    EXPECT_EQ(cfg.detect.combiner, mec::Combiner::weighted);
    EXPECT_FALSE(cfg.seed);
}

TEST(Config, RejectsUnknownAndMistyped) {
    const char* bad[] = {
        R"({"lambda": [1]})",
        R"({"scenario": {"dims": 6}})",
        R"({"lambda_grid": {"cnt": 3}})",
        R"({"combiner": "max"})",
        R"({"tau": "big"})",
        R"({"lambda_grid": []})",
        R"({"lambda_grid": [-1]})",
        R"({"prior_weight": -1})",
        R"({"m_grid_max_exponent": 70})",
        R"({"scenario": {"default_model": "guess"}})",
        R"([1, 2])",
    };
    for (const char* text : bad) {
        EXPECT_THROW(mec::parse_run_config(nlohmann::json::parse(text)), mec::ConfigError) << text;
    }
}

TEST(Config, LoadsFromFile) {
    const auto dir = scratch_dir();
    write_text(dir / "c.json", R"({"tau": 3})");
    EXPECT_EQ(mec::load_run_config(dir / "c.json").detect.tau, 3.0);
    write_text(dir / "broken.json", "{");
    EXPECT_THROW(mec::load_run_config(dir / "broken.json"), mec::ConfigError);
    EXPECT_THROW(mec::load_run_config(dir / "none.json"), mec::ConfigError);
    fs::remove_all(dir);
}
