#include "mec/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "mec/errors.hpp"

namespace mec::io {
namespace {

constexpr std::array<char, 4> kMagic = {'M', 'E', 'C', 'B'};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    if (field.front() == '+') field.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc{} && ptr == field.data() + field.size();
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

void put_u32(std::ostream& out, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                           static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4)) throw DataError("MECB: truncated header");
    return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
           (static_cast<std::uint32_t>(bytes[2]) << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
}

}  // namespace

Eigen::MatrixXd read_csv(std::istream& in) {
    std::vector<double> values;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (!parse_double(fields[k], row[k])) numeric = false;
        }
        if (!numeric) {
            if (first_content) {
                first_content = false;
                continue;  // header
            }
            throw DataError("CSV line " + std::to_string(line_no) + ": non-numeric field");
        }
        first_content = false;
        if (rows == 0) cols = row.size();
        if (row.size() != cols) {
            throw DataError("CSV line " + std::to_string(line_no) + ": expected " +
                            std::to_string(cols) + " fields, got " + std::to_string(row.size()));
        }
        values.insert(values.end(), row.begin(), row.end());
        ++rows;
    }
    if (rows == 0) throw DataError("CSV: no data rows");
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = values[r * cols + c];
    }
    return m;
}

void write_csv(std::ostream& out, const Eigen::MatrixXd& m) {
    char buf[64];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out.put(',');
            const auto res = std::to_chars(buf, buf + sizeof buf, m(r, c));
            out.write(buf, res.ptr - buf);
        }
        out.put('\n');
    }
}

Eigen::MatrixXd read_mecb(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), 4) || magic != kMagic) throw DataError("MECB: bad magic bytes");
    const std::uint32_t n = get_u32(in);
    const std::uint32_t M = get_u32(in);
    Eigen::MatrixXd m(M, n);
    for (std::uint32_t r = 0; r < M; ++r) {
        for (std::uint32_t c = 0; c < n; ++c) {
            unsigned char bytes[8];
            if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw DataError("MECB: truncated data");
            std::uint64_t bitsv = 0;
            for (int k = 7; k >= 0; --k) bitsv = (bitsv << 8) | bytes[k];
            m(r, c) = std::bit_cast<double>(bitsv);
        }
    }
    return m;
}

void write_mecb(std::ostream& out, const Eigen::MatrixXd& m) {
    out.write(kMagic.data(), 4);
    put_u32(out, static_cast<std::uint32_t>(m.cols()));
    put_u32(out, static_cast<std::uint32_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            auto bitsv = std::bit_cast<std::uint64_t>(m(r, c));
            char bytes[8];
            for (int k = 0; k < 8; ++k) {
                bytes[k] = static_cast<char>(bitsv & 0xff);
                bitsv >>= 8;
            }
            out.write(bytes, 8);
        }
    }
}

Eigen::MatrixXd read_samples(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::array<char, 4> head{};
    in.read(head.data(), 4);
    const bool binary = in.gcount() == 4 && head == kMagic;
    in.clear();
    in.seekg(0);
    return binary ? read_mecb(in) : read_csv(in);
}

void write_samples(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    if (path.extension() == ".mecb") {
        write_mecb(out, m);
    } else {
        write_csv(out, m);
    }
    if (!out) throw DataError("write failed for " + path.string());
}

GaussianModel read_covariance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    const Eigen::MatrixXd m = read_csv(in);
    if (m.rows() != m.cols()) {
        throw DataError("covariance file " + path.string() + " is not square");
    }
    try {
        return GaussianModel::from_covariance(0.5 * (m + m.transpose()));
    } catch (const DomainError& e) {
        throw DataError("covariance file " + path.string() + ": " + e.what());
    }
}

TabulatedCdf::TabulatedCdf(std::vector<double> x, std::vector<double> f)
    : x_(std::move(x)), f_(std::move(f)) {
    if (x_.size() != f_.size() || x_.empty()) throw DataError("cdf table: need matching, non-empty columns");
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!std::isfinite(x_[i]) || !(f_[i] >= 0.0 && f_[i] <= 1.0)) {
            throw DataError("cdf table: row " + std::to_string(i + 1) + " out of range");
        }
        if (i > 0 && (x_[i] <= x_[i - 1] || f_[i] < f_[i - 1])) {
            throw DataError("cdf table: rows must increase in x and not decrease in F");
        }
    }
}

double TabulatedCdf::operator()(double v) const {
    if (std::isnan(v)) return v;
    if (v <= x_.front()) return f_.front();
    if (v >= x_.back()) return f_.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), v) - x_.begin());
    const std::size_t lo = hi - 1;
    const double t = (v - x_[lo]) / (x_[hi] - x_[lo]);
    return f_[lo] + t * (f_[hi] - f_[lo]);
}

TabulatedCdf read_cdf_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    const Eigen::MatrixXd m = read_csv(in);
    if (m.cols() != 2) throw DataError("cdf table: expected two columns in " + path.string());
    std::vector<double> x(m.rows()), f(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        x[i] = m(i, 0);
        f[i] = m(i, 1);
    }
    return TabulatedCdf(std::move(x), std::move(f));
}

}  // namespace mec::io
