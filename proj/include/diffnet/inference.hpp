#pragma once
// Structure-recovery estimators: exhaustive maximum likelihood over the
// hypothesis class (the Bayes rule under the uniform prior here) and a fast
// absence-count baseline. Both break ties lexicographically so experiment
// runs are reproducible.

#include <cstdint>
#include <optional>
#include <vector>

#include "diffnet/likelihood.hpp"
#include "diffnet/model.hpp"
#include "diffnet/transmission.hpp"

namespace diffnet {

// A homogeneous sample set: all cascades share the model kind and dimension.
// `spec` is set iff kind == continuous.
struct Dataset {
    ModelParams params;
    ModelKind kind = ModelKind::discrete;
    std::optional<TransmissionSpec> spec;
    std::vector<DiscreteCascade> discrete;
    std::vector<ContinuousCascade> continuous;

    std::size_t size() const {
        return kind == ModelKind::discrete ? discrete.size() : continuous.size();
    }
};

Dataset make_discrete_dataset(const ModelParams& params,
                              std::vector<DiscreteCascade> samples);
Dataset make_continuous_dataset(const ModelParams& params, const TransmissionSpec& spec,
                                std::vector<ContinuousCascade> samples);

/// Throws std::invalid_argument if samples disagree with params/kind/spec.
void validate_dataset(const Dataset& data);

/// C(p,k) in exact 64-bit arithmetic; std::length_error on overflow.
std::uint64_t binomial_u64(int p, int k);

// Streams the hypothesis class in lexicographic order ({1,2,..,k} first)
// without materializing it.
class HypothesisEnumerator {
public:
    HypothesisEnumerator(int p, int k);  // requires 1 <= k <= p
    std::optional<Hypothesis> next();

private:
    int p_;
    int k_;
    std::vector<int> current_;
    bool exhausted_ = false;
    bool started_ = false;
};

/// The full class as a vector; guard C(p,k) <= 10^7 (std::length_error).
std::vector<Hypothesis> enumerate_hypotheses(int p, int k);

/// The index-th hypothesis in lexicographic order (combinatorial unranking).
Hypothesis hypothesis_from_index(int p, int k, std::uint64_t index);

/// argmax over the class of the summed log-likelihood, ties broken toward the
/// lexicographically first hypothesis. Scores use the reduced objective (the
/// child-conditional terms only): parent marginals and transmission densities
/// are hypothesis-independent, so the argmax is unchanged. Works on both
/// model kinds through the activation indicators. Guard C(p,k) <= 10^7.
Hypothesis ml_estimate(const Dataset& data);

/// Same argmax through the full per-sample log-likelihood; the oracle
/// ml_estimate is tested against.
Hypothesis ml_estimate_full(const Dataset& data);

/// score_i = #{samples : parent i active and child inactive}; returns the k
/// indices with the smallest scores (ties toward smaller indices). An active
/// parent with an inactive child is evidence against that parent.
Hypothesis absence_score_estimate(const Dataset& data);

}  // namespace diffnet
