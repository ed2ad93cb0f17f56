#pragma once
// Exact KL divergences and mutual information by enumeration, the closed-form
// KL upper bounds for both models, and the sample-count thresholds below
// which uniform structure recovery must fail with probability >= 1/2.
// All quantities are in nats.

#include <vector>

#include "diffnet/model.hpp"
#include "diffnet/transmission.hpp"

namespace diffnet {

struct KlReport {
    Hypothesis a;
    Hypothesis b;
    int overlap = 0;
    double exact_kl = 0.0;
    double bound = 0.0;
};

struct ThresholdReport {
    int p = 0;
    int k = 0;
    double theta0 = 0.0;
    ModelKind kind = ModelKind::discrete;
    double kappa_ratio = 0.0;  // NaN for the discrete model
    double numerator = 0.0;    // k log p - k log k - 2 log 2
    double denominator = 0.0;  // 2 * (closed-form KL bound)
    double n_star = 0.0;       // numerator / denominator
    long long n_floor = 0;     // floor(n_star), clamped at 0
    bool vacuous = false;      // numerator <= 0
};

/// Exact KL(P(.|piA) || P(.|piB)) for the discrete model. The 2^{p+1}-term
/// sum collapses over the joint active counts of the overlap and the two
/// exclusive parent blocks (parents are i.i.d. Bernoulli(theta0)), so the
/// cost is O(k^3) and the guard is p <= 10^4 (std::length_error above it).
double kl_exact_discrete(const ModelParams& params, const Hypothesis& piA,
                         const Hypothesis& piB);

/// The literal sum over all 2^{p+1} outcomes through loglik_discrete; the
/// oracle the grouped evaluator is tested against. Guard p <= 20.
double kl_exact_discrete_naive(const ModelParams& params, const Hypothesis& piA,
                               const Hypothesis& piB);

/// Discrete closed-form bound: KL <= log(1/theta0) for every hypothesis pair.
double kl_bound_discrete(double theta0);

/// Exact KL for the continuous model, assembled from the continuous child
/// conditionals plus the transmission-density log-ratio expectations (which
/// vanish for the hypothesis-independent families shipped here). Equals
/// kl_exact_discrete at the same (p,k,theta0) by density cancellation.
double kl_exact_continuous(const ModelParams& params, const Hypothesis& piA,
                           const Hypothesis& piB, const TransmissionSpec& spec);

/// Continuous closed-form bound:
/// KL <= log max{ (kappa2/kappa1)(1/theta0 - (1-theta0)), 1/theta0 }.
/// Throws std::invalid_argument unless 0 < kappa1 <= kappa2 < inf.
double kl_bound_continuous(double theta0, double kappa1, double kappa2);

/// n * (closed-form KL bound): the pairwise bound on I(truth; n samples).
/// Continuous model reads kappa1/kappa2 off the spec (Condition 1 required).
double mi_pairwise_bound(long long n, const ModelParams& params, ModelKind kind,
                         const TransmissionSpec* spec = nullptr);

/// The tighter (n/|F|^2) sum over all ordered hypothesis pairs of the exact
/// KL. Pair KL depends only on the overlap, so the double sum reduces to a
/// hypergeometric-weighted sum over overlap sizes; model-independent by
/// density cancellation.
double mi_pairwise_exact_avg(long long n, const ModelParams& params);

/// Exact I(truth; t) for a single sample under the uniform prior over the
/// hypothesis class: the average over pi of KL(P(.|pi) || mixture), with the
/// mixture accumulated by log-sum-exp. Guard C(p,k) * 2^{p+1} <= 10^7.
double mi_exact_single_sample(const ModelParams& params);

/// k (log p - log k); a lower bound on log C(p,k).
double log_binom_lower(long long p, long long k);

/// log C(p,k) exactly via lgamma.
double log_binom_exact(long long p, long long k);

ThresholdReport fano_threshold_discrete(int p, int k, double theta0);
ThresholdReport fano_threshold_continuous(int p, int k, double theta0,
                                          double kappa1, double kappa2);
/// Censored-exponential convenience form: kappa2/kappa1 = e^{lambda T}.
ThresholdReport fano_threshold_exponential(int p, int k, double theta0,
                                           double lambda, double T);

// ---------------------------------------------------------------------------
// Exhaustive verification sweeps (shared by `diffnet verify` and the
// acceptance suite). One row per (p, k, theta0[, lambda, T]) instance.

struct Lemma1Check {
    int p = 0, k = 0;
    double theta0 = 0.0;
    long long pairs = 0;
    double max_kl = 0.0;
    double bound = 0.0;
    double max_violation = 0.0;  // max over pairs of (exact - bound)
    int min_overlap = 0;         // smallest overlap achievable at this (p,k)
    int max_at_overlap = -1;     // an overlap attaining the max KL (ties: smallest)
    bool monotone_in_overlap = true;
    bool kl_within_bound = true;
    bool max_at_min_overlap = true;
    bool pass() const { return kl_within_bound && max_at_min_overlap && monotone_in_overlap; }
};

struct Lemma2Check {
    int p = 0, k = 0;
    double theta0 = 0.0;
    double lambda = 0.0;
    double T = 0.0;
    long long pairs = 0;
    double max_kl = 0.0;
    double bound = 0.0;
    double max_violation = 0.0;
    double max_discrete_gap = 0.0;  // max |continuous exact - discrete exact|
    bool kl_within_bound = true;
    bool matches_discrete = true;  // gap <= 1e-9
    bool pass() const { return kl_within_bound && matches_discrete; }
};

struct MiChainCheck {
    int p = 0, k = 0;
    double theta0 = 0.0;
    double mi_exact = 0.0;
    double pairwise_avg = 0.0;
    double klmax = 0.0;
    bool pass_chain = true;  // mi_exact <= pairwise_avg <= klmax (within 1e-12)
    bool pass() const { return pass_chain; }
};

std::vector<Lemma1Check> verify_lemma1(int pmax, int kmax,
                                       const std::vector<double>& theta0s = {0.3, 0.5, 0.7});
std::vector<Lemma2Check> verify_lemma2(int pmax, int kmax,
                                       const std::vector<double>& theta0s = {0.3, 0.5, 0.7},
                                       const std::vector<double>& lambdas = {0.5, 1.0, 2.0},
                                       const std::vector<double>& horizons = {0.5, 1.0});
std::vector<MiChainCheck> verify_mi_chain(int pmax, int kmax,
                                          const std::vector<double>& theta0s = {0.3, 0.5, 0.7});

}  // namespace diffnet
