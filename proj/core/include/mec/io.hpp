#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "mec/covsel.hpp"

namespace mec::io {

/// CSV: one row per line, comma separated. A first line containing any
/// non-numeric field is taken as a header and skipped. Throws DataError on
/// ragged rows or unparsable values.
Eigen::MatrixXd read_csv(std::istream& in);
/// Shortest round-trip decimal representation of every value.
void write_csv(std::ostream& out, const Eigen::MatrixXd& m);

/// MECB: "MECB", u32 LE columns n, u32 LE rows M, then M * n IEEE-754
/// binary64 LE values, row-major.
Eigen::MatrixXd read_mecb(std::istream& in);
void write_mecb(std::ostream& out, const Eigen::MatrixXd& m);

/// Reads MECB when the file starts with the magic bytes, CSV otherwise.
Eigen::MatrixXd read_samples(const std::filesystem::path& path);
/// Writes MECB for a ".mecb" extension, CSV otherwise.
void write_samples(const std::filesystem::path& path, const Eigen::MatrixXd& m);

/// Piecewise-linear CDF through (x, F(x)) knots; constant beyond the end
/// knots.
class TabulatedCdf {
public:
    TabulatedCdf(std::vector<double> x, std::vector<double> f);
    double operator()(double v) const;

private:
    std::vector<double> x_;
    std::vector<double> f_;
};

/// Two-column CSV of knots: x strictly increasing, F nondecreasing in [0, 1].
TabulatedCdf read_cdf_table(const std::filesystem::path& path);

/// n x n covariance CSV. The matrix is averaged with its transpose and
/// must be positive definite; otherwise DataError.
GaussianModel read_covariance(const std::filesystem::path& path);

}  // namespace mec::io
