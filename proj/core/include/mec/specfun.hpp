#pragma once

#include <cstdint>
#include <span>

namespace mec {

/// Codelength in bits. Differential codelengths may be negative; +inf marks
/// a coder that cannot describe the data at all.
using Bits = double;

/// Normalizing constant of the Elias log* code, log2(2.865064).
inline constexpr double kLogStarConstant = 1.5185673663648482;

/// Elias universal integer codelength: log2 m + log2 log2 m + ... keeping
/// strictly positive terms, plus kLogStarConstant. Requires m >= 1.
Bits log_star(double m);

/// Natural log of the Gamma function for x > 0 (Lanczos, ~15 digits).
/// Reentrant, unlike std::lgamma which writes signgam.
double ln_gamma(double x);

double digamma(double x);
double trigamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

/// CDF of the chi-square distribution with k degrees of freedom.
double chi2_cdf(int k, double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// log2 of the binomial coefficient C(m, b). Stable for m up to 2^63.
Bits log_binomial(std::uint64_t m, std::uint64_t b);

/// Shannon entropy in bits of a probability vector (0 log 0 = 0).
Bits entropy(std::span<const double> p);

/// -log2 sum_i 2^{-lengths[i]} evaluated with a max shift. Entries may be
/// +inf; returns +inf when every entry is +inf or the span is empty.
Bits mixture_codelength(std::span<const Bits> lengths);

}  // namespace mec
