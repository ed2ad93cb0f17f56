#pragma once
// Seeded generative simulators for both models. All randomness flows through
// Rng, a thin mt19937_64 wrapper with fixed output mappings, so a seed fully
// determines the cascade stream on every platform that ships the standard
// engine.

#include <cstdint>
#include <random>
#include <vector>

#include "diffnet/model.hpp"
#include "diffnet/transmission.hpp"

namespace diffnet {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0,1) with 53 significant bits.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double prob) { return uniform() < prob; }

    /// Unbiased uniform draw from [0,n) by rejection. n must be positive.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 eng_;
};

/// One discrete cascade: each parent activates at time 1 w.p. theta0; the
/// child activates at time 2 w.p. child_activation_prob(a) where a counts the
/// active members of `truth`.
DiscreteCascade draw_discrete(const ModelParams& params, const Hypothesis& truth,
                              Rng& rng);

/// One continuous cascade: activation as in the discrete model, with
/// activation times drawn from the censored transmission density by inverse
/// CDF ([0,T] for parents, [T,2T] for the child).
ContinuousCascade draw_continuous(const ModelParams& params, const Hypothesis& truth,
                                  const TransmissionSpec& spec, Rng& rng);

/// Single-cascade draws from a fresh seed; repeated calls with the same seed
/// return identical cascades.
DiscreteCascade simulate_discrete(const ModelParams& params, const Hypothesis& truth,
                                  std::uint64_t seed);
ContinuousCascade simulate_continuous(const ModelParams& params, const Hypothesis& truth,
                                      const TransmissionSpec& spec, std::uint64_t seed);

/// n sequential draws from one seeded stream.
std::vector<DiscreteCascade> simulate_discrete_dataset(const ModelParams& params,
                                                       const Hypothesis& truth,
                                                       std::size_t n, std::uint64_t seed);
std::vector<ContinuousCascade> simulate_continuous_dataset(const ModelParams& params,
                                                           const Hypothesis& truth,
                                                           const TransmissionSpec& spec,
                                                           std::size_t n, std::uint64_t seed);

}  // namespace diffnet
