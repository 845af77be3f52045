#include "mec/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "mec/errors.hpp"

namespace mec {
namespace {

void require_unit_interval(std::span<const double> u, const char* who) {
    if (u.empty()) throw DomainError(std::string(who) + ": empty sample");
    for (double v : u) {
        if (!(v >= 0.0 && v < 1.0)) {
            throw DomainError(std::string(who) + ": sample " + std::to_string(v) +
                              " outside [0, 1)");
        }
    }
}

std::vector<std::uint64_t> quantize(std::span<const double> u, std::uint64_t m) {
    std::vector<std::uint64_t> q(u.size());
    const double scale = static_cast<double>(m);
    for (std::size_t i = 0; i < u.size(); ++i) {
        q[i] = std::min(m - 1, static_cast<std::uint64_t>(u[i] * scale));
    }
    return q;
}

}  // namespace

Bits kt_bits(std::span<const std::uint64_t> symbols, std::uint64_t alphabet) {
    if (alphabet < 1) throw DomainError("kt_bits: alphabet must be non-empty");
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    const double half_alphabet = 0.5 * static_cast<double>(alphabet);
    Bits total = 0.0;
    double t = 0.0;
    for (std::uint64_t s : symbols) {
        if (s >= alphabet) {
            throw DomainError("kt_bits: symbol " + std::to_string(s) + " outside alphabet of size " +
                              std::to_string(alphabet));
        }
        auto& c = counts[s];
        total -= std::log2((static_cast<double>(c) + 0.5) / (t + half_alphabet));
        ++c;
        t += 1.0;
    }
    return total;
}

Bits histogram_codelength(std::span<const double> u, std::uint64_t m) {
    if (m < 1) throw DomainError("histogram_codelength: bin count must be >= 1");
    require_unit_interval(u, "histogram_codelength");
    const auto M = static_cast<std::uint64_t>(u.size());
    const double Md = static_cast<double>(M);
    auto q = quantize(u, m);

    Bits coded_bins = 0.0;
    if (m <= M) {
        std::sort(q.begin(), q.end());
        std::vector<double> p;
        for (std::size_t i = 0; i < q.size();) {
            std::size_t j = i;
            while (j < q.size() && q[j] == q[i]) ++j;
            p.push_back(static_cast<double>(j - i) / Md);
            i = j;
        }
        coded_bins = Md * entropy(p) + 0.5 * static_cast<double>(m - 1) * std::log2(Md);
    } else {
        std::vector<std::uint64_t> occupied = q;
        std::sort(occupied.begin(), occupied.end());
        occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
        const auto b = static_cast<std::uint64_t>(occupied.size());
        std::vector<std::uint64_t> ranks(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            ranks[i] = static_cast<std::uint64_t>(
                std::lower_bound(occupied.begin(), occupied.end(), q[i]) - occupied.begin());
        }
        coded_bins = std::log2(Md) + log_binomial(m, b) + kt_bits(ranks, b);
    }
    return coded_bins - Md * std::log2(static_cast<double>(m));
}

std::vector<std::uint64_t> histogram_grid(int max_exponent) {
    if (max_exponent < 0 || max_exponent > 62) {
        throw DomainError("histogram_grid: exponent must lie in [0, 62]");
    }
    std::vector<std::uint64_t> grid;
    for (int j = 0; j <= max_exponent; ++j) grid.push_back(std::uint64_t{1} << j);
    return grid;
}

HistogramScore histogram_weighted_score(std::span<const double> u,
                                        std::span<const std::uint64_t> m_grid, Bits tau) {
    if (m_grid.empty()) throw DomainError("histogram_weighted_score: empty bin grid");
    require_unit_interval(u, "histogram_weighted_score");

    std::vector<double> sorted(u.begin(), u.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return HistogramScore{-inf, inf, true, true};
    }

    std::vector<Bits> lengths;
    lengths.reserve(m_grid.size());
    for (std::size_t k = 0; k < m_grid.size(); ++k) {
        lengths.push_back(histogram_codelength(u, m_grid[k]) +
                          log_star(static_cast<double>(k + 1)));
    }
    const Bits combined = mixture_codelength(lengths);
    return HistogramScore{combined, -combined, combined + tau < 0.0, false};
}

std::vector<double> cdf_transform(std::span<const double> x,
                                  const std::function<double(double)>& cdf) {
    constexpr double upper = 1.0 - 0x1p-52;
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        u[i] = cdf(x[i]);
        if (std::isnan(u[i])) throw DomainError("cdf_transform: cdf returned NaN");
    }
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (u[order[k]] < u[order[k - 1]]) {
            throw DomainError("cdf_transform: cdf is decreasing between " +
                              std::to_string(x[order[k - 1]]) + " and " +
                              std::to_string(x[order[k]]));
        }
    }
    for (double& v : u) v = std::clamp(v, 0.0, upper);
    return u;
}

}  // namespace mec
