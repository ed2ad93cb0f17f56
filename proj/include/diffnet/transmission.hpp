#pragma once
// Transmission-time densities censored (renormalized) to a finite horizon
// [0,T], plus their boundedness constants kappa1 <= f <= kappa2. The
// constants feed the continuous-time KL bound and recovery threshold.

#include <string>

namespace diffnet {

enum class Family { exponential, rayleigh, weibull };

const char* to_string(Family family);
Family family_from_string(const std::string& name);

// A transmission-function instance. kappa1/kappa2 are filled at construction:
// analytically for the exponential family (kappa1 = lambda e^{-lambda T} / (1
// - e^{-lambda T}), kappa2 = lambda / (1 - e^{-lambda T})), and by a 1e5-point
// uniform grid including both endpoints otherwise. All shipped families are
// hypothesis-independent.
struct TransmissionSpec {
    Family family = Family::exponential;
    double lambda = 0.0;   // exponential rate
    double sigma = 0.0;    // rayleigh scale; also the weibull scale
    double shape = 0.0;    // weibull shape, must be >= 1
    double horizon = 0.0;  // T
    double kappa1 = 0.0;   // min density over [0,T]
    double kappa2 = 0.0;   // max density over [0,T]

    static TransmissionSpec exponential(double lambda, double T);
    static TransmissionSpec rayleigh(double sigma, double T);
    // shape < 1 is rejected: the density diverges at 0, so kappa2 = inf.
    static TransmissionSpec weibull(double shape, double scale, double T);

    bool operator==(const TransmissionSpec&) const = default;
};

/// Censored density at t. Throws std::domain_error for t outside [0,T].
double transmission_density(const TransmissionSpec& spec, double t);

/// Censored CDF on [0,T]; 0 at t=0 and 1 at t=T.
double transmission_cdf(const TransmissionSpec& spec, double t);

/// Inverse of the censored CDF, mapping u in [0,1) into [0,T].
double transmission_quantile(const TransmissionSpec& spec, double u);

struct Kappas {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
};

/// The density min/max over the horizon. Throws std::domain_error when
/// kappa1 vanishes (within 1e-12): such a density cannot satisfy the
/// boundedness condition, e.g. rayleigh and weibull with shape > 1 at t=0.
Kappas boundedness_constants(const TransmissionSpec& spec);

}  // namespace diffnet
