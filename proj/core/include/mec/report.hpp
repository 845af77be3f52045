#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "mec/bench.hpp"
#include "mec/combine.hpp"
#include "mec/histogram.hpp"

namespace mec {

/// Finite values as numbers; infinities as the strings "+inf" / "-inf".
nlohmann::json bits_json(double v);

nlohmann::json to_json(const DetectionResult& r);
nlohmann::json to_json(const HistogramScore& r, double tau, const std::string& cdf);
nlohmann::json to_json(const BenchResult& r);
nlohmann::json to_json(const Chi2CheckResult& r);

/// trial,label,seed,score
void write_trials_csv(std::ostream& out, const BenchResult& r);
/// Aligned-column summary for terminals.
std::string format_bench_text(const BenchResult& r);

}  // namespace mec
