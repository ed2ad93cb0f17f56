#include "diffnet/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "diffnet/inference.hpp"
#include "diffnet/likelihood.hpp"

namespace diffnet {

namespace {

constexpr int kGroupedGuardP = 10000;
constexpr int kNaiveGuardP = 20;
constexpr std::uint64_t kMiGuardTerms = 10000000;  // C(p,k) * 2^{p+1}

double log_binom_pmf(int n, int j, double prob) {
    return log_binom_exact(n, j) + j * std::log(prob) + (n - j) * std::log1p(-prob);
}

// Child-term KL contribution when piA has a and piB has b active members:
// q_a log(q_a/q_b) + (1-q_a) log((1-q_a)/(1-q_b)).
double child_kl_term(int a, int b, const ModelParams& params) {
    if (a == b) return 0.0;
    double log_ia = log_child_inactive_prob(a, params);
    double log_ib = log_child_inactive_prob(b, params);
    double qa = -std::expm1(log_ia);
    double log_qa = std::log(qa);
    double log_qb = log_child_active_prob(b, params);
    return qa * (log_qa - log_qb) + (1.0 - qa) * (log_ia - log_ib);
}

// Shared by the discrete grouped evaluator and the continuous pathway:
// expectation of the child-term KL over the joint active counts of the
// overlap block (size s) and the two exclusive blocks (size k-s each).
double grouped_child_expectation(const ModelParams& params, int shared) {
    const int k = params.k();
    const int excl = k - shared;
    const double theta0 = params.theta0();

    std::vector<double> w_shared(shared + 1), w_excl(excl + 1);
    for (int c = 0; c <= shared; ++c) w_shared[c] = std::exp(log_binom_pmf(shared, c, theta0));
    for (int u = 0; u <= excl; ++u) w_excl[u] = std::exp(log_binom_pmf(excl, u, theta0));

    long double acc = 0.0L;
    for (int c = 0; c <= shared; ++c) {
        for (int u = 0; u <= excl; ++u) {
            for (int v = 0; v <= excl; ++v) {
                acc += static_cast<long double>(w_shared[c] * w_excl[u] * w_excl[v]) *
                       child_kl_term(c + u, c + v, params);
            }
        }
    }
    return static_cast<double>(acc);
}

// 64-point Gauss-Legendre nodes/weights on [-1,1], computed once by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<double> nodes, weights;
};

const GaussLegendre& gauss_legendre_64() {
    static const GaussLegendre table = [] {
        constexpr int n = 64;
        GaussLegendre gl;
        gl.nodes.resize(n);
        gl.weights.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            gl.nodes[i] = x;
            gl.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return gl;
    }();
    return table;
}

// Integral over [0,T] of fA(t) log(fA(t)/fB(t)): the per-activation density
// contribution to the continuous KL. Identically zero when the two specs
// coincide, which is the only shipped case.
double density_log_ratio_expectation(const TransmissionSpec& fa, const TransmissionSpec& fb) {
    const auto& gl = gauss_legendre_64();
    const double half = 0.5 * fa.horizon;
    long double acc = 0.0L;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        double t = half * (gl.nodes[i] + 1.0);
        double da = transmission_density(fa, t);
        double db = transmission_density(fb, t);
        acc += static_cast<long double>(gl.weights[i]) * da * (std::log(da) - std::log(db));
    }
    return static_cast<double>(acc) * half;
}

void check_theta0(double theta0) {
    if (!(theta0 > 0.0 && theta0 < 1.0)) {
        throw std::invalid_argument("theta0 must lie strictly in (0,1)");
    }
}

ThresholdReport make_threshold(int p, int k, double theta0, ModelKind kind,
                               double kappa_ratio, double kl_bound) {
    ThresholdReport r;
    r.p = p;
    r.k = k;
    r.theta0 = theta0;
    r.kind = kind;
    r.kappa_ratio = kappa_ratio;
    r.numerator = log_binom_lower(p, k) - 2.0 * std::log(2.0);
    r.denominator = 2.0 * kl_bound;
    r.n_star = r.numerator / r.denominator;
    r.vacuous = !(r.numerator > 0.0);
    r.n_floor = r.vacuous ? 0 : static_cast<long long>(std::floor(r.n_star));
    if (r.n_floor < 0) r.n_floor = 0;
    return r;
}

}  // namespace

double kl_exact_discrete(const ModelParams& params, const Hypothesis& piA,
                         const Hypothesis& piB) {
    validate_hypothesis(piA, params);
    validate_hypothesis(piB, params);
    if (params.p() > kGroupedGuardP) {
        throw std::length_error("kl_exact_discrete: p exceeds the enumeration guard");
    }
    if (piA == piB) return 0.0;
    return grouped_child_expectation(params, overlap(piA, piB));
}

double kl_exact_discrete_naive(const ModelParams& params, const Hypothesis& piA,
                               const Hypothesis& piB) {
    validate_hypothesis(piA, params);
    validate_hypothesis(piB, params);
    const int p = params.p();
    if (p > kNaiveGuardP) {
        throw std::length_error("kl_exact_discrete_naive: p exceeds the enumeration guard");
    }
    long double acc = 0.0L;
    DiscreteCascade c;
    c.parent_active.resize(p);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
        for (int i = 0; i < p; ++i) c.parent_active[i] = (mask >> i) & 1;
        for (int child = 0; child < 2; ++child) {
            c.child_active = child == 1;
            double lla = loglik_discrete(c, piA, params);
            double llb = loglik_discrete(c, piB, params);
            acc += std::exp(static_cast<long double>(lla)) * (lla - llb);
        }
    }
    return static_cast<double>(acc);
}

double kl_bound_discrete(double theta0) {
    check_theta0(theta0);
    return std::log(1.0 / theta0);
}

double kl_exact_continuous(const ModelParams& params, const Hypothesis& piA,
                           const Hypothesis& piB, const TransmissionSpec& spec) {
    validate_hypothesis(piA, params);
    validate_hypothesis(piB, params);
    if (params.p() > kGroupedGuardP) {
        throw std::length_error("kl_exact_continuous: p exceeds the enumeration guard");
    }
    if (piA == piB) return 0.0;

    // Child-conditional expectation over joint active counts, as in the
    // discrete case (the continuous conditionals share the same activation
    // probabilities), plus the density log-ratio expectations: one per
    // expected active parent and one weighted by the child activation
    // probability. Both vanish here because the shipped transmission
    // functions do not depend on the hypothesis.
    double kl = grouped_child_expectation(params, overlap(piA, piB));

    double density_term = density_log_ratio_expectation(spec, spec);
    double expected_active_parents = params.p() * params.theta0();
    long double child_active_mass = 0.0L;
    const int k = params.k();
    for (int a = 0; a <= k; ++a) {
        child_active_mass += std::exp(log_binom_pmf(k, a, params.theta0())) *
                             child_activation_prob(a, params);
    }
    kl += (expected_active_parents + static_cast<double>(child_active_mass)) * density_term;
    return kl;
}

double kl_bound_continuous(double theta0, double kappa1, double kappa2) {
    check_theta0(theta0);
    if (!(kappa1 > 0.0) || !(kappa2 >= kappa1) || !std::isfinite(kappa2)) {
        throw std::invalid_argument("boundedness constants must satisfy 0 < kappa1 <= kappa2 < inf");
    }
    double ratio = kappa2 / kappa1;
    double inv = 1.0 / theta0;
    return std::log(std::max(ratio * (inv - (1.0 - theta0)), inv));
}

double mi_pairwise_bound(long long n, const ModelParams& params, ModelKind kind,
                         const TransmissionSpec* spec) {
    if (n < 0) throw std::invalid_argument("sample count must be >= 0");
    if (kind == ModelKind::discrete) {
        return static_cast<double>(n) * kl_bound_discrete(params.theta0());
    }
    if (spec == nullptr) {
        throw std::invalid_argument("continuous pairwise bound requires a transmission spec");
    }
    Kappas kappas = boundedness_constants(*spec);
    return static_cast<double>(n) *
           kl_bound_continuous(params.theta0(), kappas.kappa1, kappas.kappa2);
}

double mi_pairwise_exact_avg(long long n, const ModelParams& params) {
    if (n < 0) throw std::invalid_argument("sample count must be >= 0");
    const int p = params.p();
    const int k = params.k();
    if (p > kGroupedGuardP) {
        throw std::length_error("mi_pairwise_exact_avg: p exceeds the enumeration guard");
    }
    // Pair KL depends only on the overlap s; with piA fixed there are
    // C(k,s) C(p-k,k-s) choices of piB, so the |F|^2 average collapses to a
    // hypergeometric-weighted sum over s.
    long double acc = 0.0L;
    const double log_total = log_binom_exact(p, k);
    for (int s = std::max(0, 2 * k - p); s <= k; ++s) {
        double log_weight = log_binom_exact(k, s) + log_binom_exact(p - k, k - s) - log_total;
        double kl = s == k ? 0.0 : grouped_child_expectation(params, s);
        acc += std::exp(static_cast<long double>(log_weight)) * kl;
    }
    return static_cast<double>(n) * static_cast<double>(acc);
}

double mi_exact_single_sample(const ModelParams& params) {
    const int p = params.p();
    const int k = params.k();
    const std::uint64_t n_hyp = binomial_u64(p, k);
    if (p >= 63 || n_hyp > kMiGuardTerms / (std::uint64_t{1} << (p + 1))) {
        throw std::length_error("mi_exact_single_sample: C(p,k)*2^{p+1} exceeds the guard");
    }

    // Hypotheses as bitmasks; child terms tabulated by active count.
    std::vector<std::uint64_t> hyp_masks;
    hyp_masks.reserve(n_hyp);
    HypothesisEnumerator en(p, k);
    while (auto h = en.next()) {
        std::uint64_t m = 0;
        for (int idx : h->parents) m |= std::uint64_t{1} << (idx - 1);
        hyp_masks.push_back(m);
    }
    std::vector<double> log_active(k + 1), log_inactive(k + 1);
    for (int a = 0; a <= k; ++a) {
        log_active[a] = log_child_active_prob(a, params);
        log_inactive[a] = log_child_inactive_prob(a, params);
    }

    const double log_th0 = std::log(params.theta0());
    const double log_1mth0 = std::log1p(-params.theta0());
    const double log_nf = std::log(static_cast<double>(n_hyp));
    std::vector<double> ll(hyp_masks.size());

    long double mi = 0.0L;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
        int m = std::popcount(mask);
        double parent_ll = m * log_th0 + (p - m) * log_1mth0;
        for (int child = 0; child < 2; ++child) {
            double max_ll = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < hyp_masks.size(); ++i) {
                int a = std::popcount(mask & hyp_masks[i]);
                ll[i] = parent_ll + (child ? log_active[a] : log_inactive[a]);
                max_ll = std::max(max_ll, ll[i]);
            }
            long double sum = 0.0L;
            for (double v : ll) sum += std::exp(static_cast<long double>(v - max_ll));
            double log_mix = max_ll + static_cast<double>(std::log(sum)) - log_nf;
            for (double v : ll) {
                mi += std::exp(static_cast<long double>(v - log_nf)) * (v - log_mix);
            }
        }
    }
    return static_cast<double>(mi);
}

double log_binom_lower(long long p, long long k) {
    if (k < 1 || k > p) throw std::invalid_argument("log_binom_lower requires 1 <= k <= p");
    return static_cast<double>(k) *
           (std::log(static_cast<double>(p)) - std::log(static_cast<double>(k)));
}

double log_binom_exact(long long p, long long k) {
    if (k < 0 || k > p) throw std::invalid_argument("log_binom_exact requires 0 <= k <= p");
    return std::lgamma(static_cast<double>(p) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(p - k) + 1.0);
}

ThresholdReport fano_threshold_discrete(int p, int k, double theta0) {
    if (k < 1 || k > p) throw std::invalid_argument("threshold requires 1 <= k <= p");
    check_theta0(theta0);
    return make_threshold(p, k, theta0, ModelKind::discrete,
                          std::numeric_limits<double>::quiet_NaN(),
                          kl_bound_discrete(theta0));
}

ThresholdReport fano_threshold_continuous(int p, int k, double theta0, double kappa1,
                                          double kappa2) {
    if (k < 1 || k > p) throw std::invalid_argument("threshold requires 1 <= k <= p");
    check_theta0(theta0);
    return make_threshold(p, k, theta0, ModelKind::continuous, kappa2 / kappa1,
                          kl_bound_continuous(theta0, kappa1, kappa2));
}

ThresholdReport fano_threshold_exponential(int p, int k, double theta0, double lambda,
                                           double T) {
    TransmissionSpec spec = TransmissionSpec::exponential(lambda, T);
    return fano_threshold_continuous(p, k, theta0, spec.kappa1, spec.kappa2);
}

// ---------------------------------------------------------------------------
// Verification sweeps

namespace {

constexpr double kBoundSlack = 1e-12;
constexpr double kTieSlack = 1e-12;
constexpr double kDiscreteGapTol = 1e-9;

}  // namespace

std::vector<Lemma1Check> verify_lemma1(int pmax, int kmax,
                                       const std::vector<double>& theta0s) {
    std::vector<Lemma1Check> checks;
    for (int p = 2; p <= pmax; ++p) {
        for (int k = 1; k <= std::min(kmax, p - 1); ++k) {
            for (double theta0 : theta0s) {
                ModelParams params(p, k, theta0);
                auto hyps = enumerate_hypotheses(p, k);
                Lemma1Check chk;
                chk.p = p;
                chk.k = k;
                chk.theta0 = theta0;
                chk.bound = kl_bound_discrete(theta0);
                chk.min_overlap = std::max(0, 2 * k - p);
                chk.max_violation = -std::numeric_limits<double>::infinity();

                // KL depends only on the overlap; record the per-overlap value
                // while still touching every ordered pair.
                std::vector<double> by_overlap(k + 1,
                                               std::numeric_limits<double>::quiet_NaN());
                for (const auto& a : hyps) {
                    for (const auto& b : hyps) {
                        double kl = kl_exact_discrete(params, a, b);
                        ++chk.pairs;
                        chk.max_violation = std::max(chk.max_violation, kl - chk.bound);
                        if (kl > chk.bound + kBoundSlack) chk.kl_within_bound = false;
                        if (a != b) by_overlap[overlap(a, b)] = kl;
                    }
                }
                // Distinct pairs realize every overlap in [min_overlap, k-1].
                chk.max_kl = by_overlap[chk.min_overlap];
                chk.max_at_overlap = chk.min_overlap;
                for (int s = chk.min_overlap; s < k; ++s) {
                    if (by_overlap[s] > chk.max_kl) {
                        chk.max_kl = by_overlap[s];
                        chk.max_at_overlap = s;
                    }
                }
                chk.max_at_min_overlap =
                    by_overlap[chk.min_overlap] >= chk.max_kl - kTieSlack;
                for (int s = chk.min_overlap; s + 1 < k; ++s) {
                    if (by_overlap[s] < by_overlap[s + 1] - kTieSlack) {
                        chk.monotone_in_overlap = false;
                    }
                }
                checks.push_back(std::move(chk));
            }
        }
    }
    return checks;
}

std::vector<Lemma2Check> verify_lemma2(int pmax, int kmax,
                                       const std::vector<double>& theta0s,
                                       const std::vector<double>& lambdas,
                                       const std::vector<double>& horizons) {
    std::vector<Lemma2Check> checks;
    for (int p = 2; p <= pmax; ++p) {
        for (int k = 1; k <= std::min(kmax, p - 1); ++k) {
            for (double theta0 : theta0s) {
                for (double lambda : lambdas) {
                    for (double T : horizons) {
                        ModelParams params(p, k, theta0);
                        TransmissionSpec spec = TransmissionSpec::exponential(lambda, T);
                        auto hyps = enumerate_hypotheses(p, k);
                        Lemma2Check chk;
                        chk.p = p;
                        chk.k = k;
                        chk.theta0 = theta0;
                        chk.lambda = lambda;
                        chk.T = T;
                        chk.bound = kl_bound_continuous(theta0, spec.kappa1, spec.kappa2);
                        chk.max_violation = -std::numeric_limits<double>::infinity();
                        for (const auto& a : hyps) {
                            for (const auto& b : hyps) {
                                double kl = kl_exact_continuous(params, a, b, spec);
                                double kl_disc = kl_exact_discrete(params, a, b);
                                ++chk.pairs;
                                chk.max_kl = std::max(chk.max_kl, kl);
                                chk.max_violation =
                                    std::max(chk.max_violation, kl - chk.bound);
                                chk.max_discrete_gap =
                                    std::max(chk.max_discrete_gap, std::abs(kl - kl_disc));
                            }
                        }
                        chk.kl_within_bound = chk.max_violation <= kBoundSlack;
                        chk.matches_discrete = chk.max_discrete_gap <= kDiscreteGapTol;
                        checks.push_back(std::move(chk));
                    }
                }
            }
        }
    }
    return checks;
}

std::vector<MiChainCheck> verify_mi_chain(int pmax, int kmax,
                                          const std::vector<double>& theta0s) {
    std::vector<MiChainCheck> checks;
    for (int p = 2; p <= pmax; ++p) {
        for (int k = 1; k <= std::min(kmax, p - 1); ++k) {
            for (double theta0 : theta0s) {
                ModelParams params(p, k, theta0);
                MiChainCheck chk;
                chk.p = p;
                chk.k = k;
                chk.theta0 = theta0;
                chk.mi_exact = mi_exact_single_sample(params);
                chk.pairwise_avg = mi_pairwise_exact_avg(1, params);
                chk.klmax = kl_bound_discrete(theta0);
                chk.pass_chain = chk.mi_exact <= chk.pairwise_avg + kBoundSlack &&
                                 chk.pairwise_avg <= chk.klmax + kBoundSlack;
                checks.push_back(chk);
            }
        }
    }
    return checks;
}

}  // namespace diffnet
