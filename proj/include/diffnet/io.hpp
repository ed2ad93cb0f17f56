#pragma once
// File formats: cascade datasets, experiment configs, and result CSVs.
//
// Cascade file, one dataset per file, UTF-8, LF line endings:
//   CASCADES v1 model=<discrete|continuous> p=<int> k=<int> theta0=<float>
//     [family=<name> lambda=<float>|sigma=<float>|mu=<float> sigma=<float>
//      T=<float>]
//   then one sample per line: p+1 comma-separated values. Discrete samples
//   use the integers 1 (parent) / 2 (child) or "inf"; continuous samples use
//   decimal floats or "inf". Times are printed in shortest round-trip form so
//   read(write(x)) == x exactly.
//
// Config file: flat `key = value` lines; '#' comments and blank lines are
// skipped. Keys: model, p, k, theta0, family, lambda, sigma, mu, T,
// estimator, n_grid (comma list), trials, seed, out. Unknown keys are errors.
// For family=weibull, mu is the shape and sigma the scale.
//
// Parse errors throw std::runtime_error naming the offending line.

#include <iosfwd>
#include <string>

#include "diffnet/bounds.hpp"
#include "diffnet/harness.hpp"
#include "diffnet/inference.hpp"

namespace diffnet {

/// %.15g: the fixed 15-significant-digit form used in all report output.
std::string format_g15(double v);

/// Shortest representation that round-trips to the same double.
std::string format_exact(double v);

void write_cascades(const std::string& path, const Dataset& data);
Dataset read_cascades(const std::string& path);

// Stream variants (the file versions wrap these; `name` labels errors).
void write_cascades_stream(std::ostream& os, const Dataset& data);
Dataset read_cascades_stream(std::istream& is, const std::string& name);

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_stream(std::istream& is, const std::string& name);

/// Result CSV (`n,trials,failures,failure_rate,wilson95,n_star,n_floor`) plus
/// a sidecar provenance file at path + ".provenance" echoing the config and
/// tool version.
void write_results(const std::string& path, const ExperimentResult& result);
std::string results_csv(const ExperimentResult& result);
std::string provenance_text(const ExperimentResult& result);

// Report rows.
std::string kl_csv_header();
std::string kl_csv_row(const KlReport& report);
std::string threshold_csv_header();
std::string threshold_csv_row(const ThresholdReport& report);

/// Parses "1,4,7" (or "1|4|7") into a Hypothesis.
Hypothesis parse_hypothesis(const std::string& text);

}  // namespace diffnet
