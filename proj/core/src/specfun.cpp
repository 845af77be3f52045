#include "mec/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mec/errors.hpp"

namespace mec {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * ln(2 pi)

// Lanczos approximation, g = 7, 9 terms.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// ln Gamma(x + 1) - [(x + 1/2) ln x - x + ln sqrt(2 pi)], the error of
// Stirling's formula. Large arguments use the asymptotic series so the
// difference never cancels.
double stirling_error(double x) {
    if (x <= 15.0) {
        return ln_gamma(x + 1.0) - (x + 0.5) * std::log(x) + x - kHalfLog2Pi;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    return inv *
           (1.0 / 12.0 -
            inv2 * (1.0 / 360.0 -
                    inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
}

double gamma_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 100000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - ln_gamma(a));
}

// Upper regularized Q(a, x) by modified Lentz continued fraction.
double gamma_continued_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - ln_gamma(a)) * h;
}

}  // namespace

Bits log_star(double m) {
    if (!(m >= 1.0)) {
        throw DomainError("log_star: argument must be >= 1, got " + std::to_string(m));
    }
    double total = 0.0;
    double v = std::log2(m);
    while (v > 0.0) {
        total += v;
        v = std::log2(v);
    }
    return total + kLogStarConstant;
}

double ln_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("ln_gamma: argument must be > 0, got " + std::to_string(x));
    }
    if (x < 0.5) {
        // Reflection keeps the Lanczos sum in its accurate range.
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - ln_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        acc += kLanczos[i] / (z + static_cast<double>(i));
    }
    const double t = z + 7.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double digamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("digamma: argument must be > 0, got " + std::to_string(x));
    }
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv2 * (1.0 / 12.0 -
                inv2 * (1.0 / 120.0 -
                        inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    return shift + std::log(x) - 0.5 * inv - series;
}

double trigamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("trigamma: argument must be > 0, got " + std::to_string(x));
    }
    double shift = 0.0;
    while (x < 10.0) {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv * (1.0 + inv * (0.5 + inv * (1.0 / 6.0 -
                                         inv2 * (1.0 / 30.0 -
                                                 inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0))))));
    return shift + series;
}

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw DomainError("regularized_gamma_p: need a > 0 and x >= 0");
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return std::min(1.0, gamma_series(a, x));
    return std::max(0.0, 1.0 - gamma_continued_fraction(a, x));
}

double chi2_cdf(int k, double x) {
    if (k < 1) throw DomainError("chi2_cdf: degrees of freedom must be >= 1");
    if (!(x >= 0.0)) throw DomainError("chi2_cdf: x must be >= 0");
    return regularized_gamma_p(0.5 * k, 0.5 * x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

Bits log_binomial(std::uint64_t m, std::uint64_t b) {
    if (b > m) {
        throw DomainError("log_binomial: b > m (" + std::to_string(b) + " > " +
                          std::to_string(m) + ")");
    }
    const std::uint64_t k = std::min(b, m - b);
    if (k == 0) return 0.0;
    const double n = static_cast<double>(m);
    const double kk = static_cast<double>(k);
    const double rest = static_cast<double>(m - k);
    // ln C(n, k) = k ln(n/k) + (n-k) ln(n/(n-k)) + 1/2 ln(n / (2 pi k (n-k)))
    //              + stirling errors; every term is small or positive.
    const double main = kk * std::log(n / kk) - rest * std::log1p(-kk / n);
    const double half = 0.5 * (std::log(n) - std::log(kk) - std::log(rest)) - kHalfLog2Pi;
    const double corr = stirling_error(n) - stirling_error(kk) - stirling_error(rest);
    return (main + half + corr) / std::numbers::ln2;
}

Bits entropy(std::span<const double> p) {
    double sum = 0.0;
    double h = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) throw DomainError("entropy: negative or NaN probability");
        sum += v;
        if (v > 0.0) h -= v * std::log2(v);
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw DomainError("entropy: probabilities sum to " + std::to_string(sum));
    }
    return h;
}

Bits mixture_codelength(std::span<const Bits> lengths) {
    double best = kInf;
    for (double l : lengths) best = std::min(best, l);
    if (std::isinf(best)) return best;  // empty, all +inf, or some -inf
    double acc = 0.0;
    for (double l : lengths) acc += std::exp2(best - l);
    return best - std::log2(acc);
}

}  // namespace mec
