#pragma once
// Core domain types for the two-layer diffusion ensemble: a super source
// activates p parent nodes independently with probability theta0, and the
// activated members of a k-subset (plus a helper source) then attempt the
// single child node. Everything downstream (likelihoods, KL divergences,
// recovery thresholds) is parameterized by these types.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace diffnet {

enum class ModelKind { discrete, continuous };

const char* to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Per-edge influence probability theta = 1 - theta0^{1/k}, chosen so that
/// (1 - theta)^k == theta0. Throws std::invalid_argument outside the domain.
double derive_theta(double theta0, int k);

// One ensemble instance. theta is always recomputed from (theta0, k), never
// stored, so the identity (1-theta)^k == theta0 cannot drift.
class ModelParams {
public:
    // Requires 0 < theta0 < 1 and 1 <= k <= p. k == p is permitted: it yields
    // the degenerate one-hypothesis class used by the zero-information checks.
    ModelParams(int p, int k, double theta0);

    int p() const { return p_; }
    int k() const { return k_; }
    double theta0() const { return theta0_; }
    double theta() const { return derive_theta(theta0_, k_); }

    bool operator==(const ModelParams&) const = default;

private:
    int p_;
    int k_;
    double theta0_;
};

// Candidate parent set of the child node: strictly increasing 1-based indices.
struct Hypothesis {
    std::vector<int> parents;

    bool operator==(const Hypothesis&) const = default;
    auto operator<=>(const Hypothesis&) const = default;
};

/// Throws std::invalid_argument unless hyp is a strictly increasing list of
/// exactly k indices in {1..p}.
void validate_hypothesis(const Hypothesis& hyp, const ModelParams& params);

/// |a ∩ b| for sorted parent lists.
int overlap(const Hypothesis& a, const Hypothesis& b);

/// "1|4|7" — the textual form used in report CSVs.
std::string to_string(const Hypothesis& hyp);

// One discrete sample. A parent either activates at time 1 or never, the
// child at time 2 or never, so activity flags carry the full outcome.
struct DiscreteCascade {
    std::vector<std::uint8_t> parent_active;
    bool child_active = false;

    bool operator==(const DiscreteCascade&) const = default;
};

// One continuous sample over a fixed horizon T: finite parent times lie in
// [0,T], a finite child time in [T,2T]. nullopt marks a node that never
// activated (no sentinel float exists in the time axis).
struct ContinuousCascade {
    std::vector<std::optional<double>> parent_times;
    std::optional<double> child_time;
    double horizon = 0.0;

    bool operator==(const ContinuousCascade&) const = default;
};

/// P(child activates | a of its k parents active) = 1 - (1-theta)^a (1-theta0).
/// Monotone increasing in a. Throws std::invalid_argument unless 0 <= a <= k.
double child_activation_prob(int active_parents, const ModelParams& params);

/// log(1 - child_activation_prob(a)) = (a/k) log(theta0) + log(1-theta0),
/// evaluated in this closed form for stability at extreme theta0.
double log_child_inactive_prob(int active_parents, const ModelParams& params);

/// log(child_activation_prob(a)).
double log_child_active_prob(int active_parents, const ModelParams& params);

}  // namespace diffnet
