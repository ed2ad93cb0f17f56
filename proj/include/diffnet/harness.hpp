#pragma once
// Seeded Monte Carlo experiment runner. Every trial re-draws the true parent
// set uniformly from the hypothesis class (the failure probability being
// bounded is over both the truth and the samples), simulates n cascades, runs
// the chosen estimator, and records exact-set recovery failure.
//
// Per-trial seeds come from mix_seed below, so results are identical no
// matter how trials are scheduled across threads.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diffnet/bounds.hpp"
#include "diffnet/model.hpp"
#include "diffnet/transmission.hpp"

namespace diffnet {

struct ExperimentConfig {
    ModelParams params;
    ModelKind kind = ModelKind::discrete;
    std::optional<TransmissionSpec> spec;  // required iff continuous
    std::string estimator = "ml";          // "ml" | "absence"
    std::vector<long long> n_grid;         // strictly increasing
    int trials = 0;
    std::uint64_t master_seed = 0;
    std::string out;  // result CSV path; may be empty (caller decides)
};

struct ExperimentRow {
    long long n = 0;
    int trials = 0;
    int failures = 0;
    double failure_rate = 0.0;
    double wilson95 = 0.0;  // Wilson 95% halfwidth
    double n_star = 0.0;
    long long n_floor = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    ThresholdReport threshold;
    std::vector<ExperimentRow> rows;
};

// Per-trial seed derivation. Fixed published mixing function: with
// mix64 the SplitMix64 finalizer
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z ^ (z >> 31)
// and the odd constants GAMMA = 0x9E3779B97F4A7C15 (the SplitMix64
// increment) and C2 = 0xC2B2AE3D27D4EB4F,
//   seed = mix64( mix64( mix64(master + GAMMA) ^ GAMMA*(n_index+1) )
//                 ^ C2*(trial_index+1) ).
// A port that adopts the same mixer reproduces the trial streams; within one
// implementation determinism is unconditional.
std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t n_index,
                       std::uint64_t trial_index);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
    double center = 0.0;
    double halfwidth = 0.0;
};

/// Wilson score interval at 95% for failures out of trials.
WilsonInterval wilson95(int failures, int trials);

/// Runs the full grid. Deterministic in config.master_seed; trial order and
/// thread count never change the output. Throws on invalid config or when a
/// capacity guard trips.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace diffnet
