#include "diffnet/simulate.hpp"

#include <stdexcept>

namespace diffnet {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0) is empty");
    // Rejection below the largest multiple of n keeps the draw unbiased.
    std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        std::uint64_t x = eng_();
        if (x >= threshold) return x % n;
    }
}

DiscreteCascade draw_discrete(const ModelParams& params, const Hypothesis& truth,
                              Rng& rng) {
    validate_hypothesis(truth, params);
    DiscreteCascade c;
    c.parent_active.resize(params.p());
    for (int i = 0; i < params.p(); ++i) {
        c.parent_active[i] = rng.bernoulli(params.theta0()) ? 1 : 0;
    }
    int active = 0;
    for (int idx : truth.parents) active += c.parent_active[idx - 1] ? 1 : 0;
    c.child_active = rng.bernoulli(child_activation_prob(active, params));
    return c;
}

ContinuousCascade draw_continuous(const ModelParams& params, const Hypothesis& truth,
                                  const TransmissionSpec& spec, Rng& rng) {
    validate_hypothesis(truth, params);
    ContinuousCascade c;
    c.horizon = spec.horizon;
    c.parent_times.resize(params.p());
    for (int i = 0; i < params.p(); ++i) {
        if (rng.bernoulli(params.theta0())) {
            c.parent_times[i] = transmission_quantile(spec, rng.uniform());
        }
    }
    int active = 0;
    for (int idx : truth.parents) active += c.parent_times[idx - 1] ? 1 : 0;
    if (rng.bernoulli(child_activation_prob(active, params))) {
        c.child_time = spec.horizon + transmission_quantile(spec, rng.uniform());
    }
    return c;
}

DiscreteCascade simulate_discrete(const ModelParams& params, const Hypothesis& truth,
                                  std::uint64_t seed) {
    Rng rng(seed);
    return draw_discrete(params, truth, rng);
}

ContinuousCascade simulate_continuous(const ModelParams& params, const Hypothesis& truth,
                                      const TransmissionSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    return draw_continuous(params, truth, spec, rng);
}

std::vector<DiscreteCascade> simulate_discrete_dataset(const ModelParams& params,
                                                       const Hypothesis& truth,
                                                       std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<DiscreteCascade> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(draw_discrete(params, truth, rng));
    return out;
}

std::vector<ContinuousCascade> simulate_continuous_dataset(const ModelParams& params,
                                                           const Hypothesis& truth,
                                                           const TransmissionSpec& spec,
                                                           std::size_t n,
                                                           std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ContinuousCascade> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(draw_continuous(params, truth, spec, rng));
    }
    return out;
}

}  // namespace diffnet
