#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mec/specfun.hpp"

namespace mec {

/// Sequential Krichevsky-Trofimov codelength of a symbol sequence over an
/// alphabet of size `alphabet`.
Bits kt_bits(std::span<const std::uint64_t> symbols, std::uint64_t alphabet);

/// Codelength of samples in [0, 1) under the m-bin histogram coder,
/// relative to the uniform default (which costs 0 bits). For m <= M the
/// asymptotic type-class length M H(p) + (m - 1)/2 log2 M is used; for
/// m > M the occupied-bin count, the occupied set and a KT code of the bin
/// sequence are transmitted.
Bits histogram_codelength(std::span<const double> u, std::uint64_t m);

/// Bin counts 2^0 .. 2^max_exponent.
std::vector<std::uint64_t> histogram_grid(int max_exponent = 40);

struct HistogramScore {
    Bits combined_bits = 0.0;  ///< weighted histogram codelength
    Bits score = 0.0;          ///< default (0) minus combined
    bool ood = false;
    bool duplicate = false;    ///< exact repeat found; score is +inf
};

/// Weighted histogram detector. Grid entry k carries log*(k + 1). An exact
/// duplicate sample makes the weighted sum over unbounded m diverge, so it
/// short-circuits to an OOD verdict with infinite score.
HistogramScore histogram_weighted_score(std::span<const double> u,
                                        std::span<const std::uint64_t> m_grid, Bits tau);

/// u_i = cdf(x_i), clamped to [0, 1 - 2^-52]. Throws DomainError if the
/// cdf is observed decreasing on the inputs or returns NaN.
std::vector<double> cdf_transform(std::span<const double> x,
                                  const std::function<double(double)>& cdf);

}  // namespace mec
