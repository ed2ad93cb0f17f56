#pragma once
// Exact log-likelihood of one cascade under a candidate parent set. The
// likelihood factorizes into independent parent marginals and the child
// conditional, so it depends on the hypothesis only through the number of
// active hypothesis members.

#include "diffnet/model.hpp"
#include "diffnet/transmission.hpp"

namespace diffnet {

/// log P(cascade ; hyp): (#active) log theta0 + (#inactive) log(1-theta0)
/// plus the child conditional term. Finite for all valid inputs.
/// Throws std::invalid_argument on dimension mismatch.
double loglik_discrete(const DiscreteCascade& cascade, const Hypothesis& hyp,
                       const ModelParams& params);

/// Mixed discrete/continuous log-likelihood: Bernoulli activation terms,
/// density factors f(t_i) for finite parent times, and the child factor
/// q_a * f(t_child - T) or (1 - q_a). Throws std::invalid_argument on
/// dimension or horizon mismatch, std::domain_error for finite times outside
/// [0,T] (parents) or [T,2T] (child).
double loglik_continuous(const ContinuousCascade& cascade, const Hypothesis& hyp,
                         const ModelParams& params, const TransmissionSpec& spec);

}  // namespace diffnet
