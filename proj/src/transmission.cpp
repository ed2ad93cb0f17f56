#include "diffnet/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diffnet {

namespace {

constexpr int kGridPoints = 100000;  // uniform grid incl. both endpoints
constexpr double kKappaTolerance = 1e-12;

// Uncensored density and CDF of the underlying family.
double raw_density(const TransmissionSpec& s, double t) {
    switch (s.family) {
        case Family::exponential:
            return s.lambda * std::exp(-s.lambda * t);
        case Family::rayleigh: {
            double z = t / s.sigma;
            return z / s.sigma * std::exp(-0.5 * z * z);
        }
        case Family::weibull: {
            double z = t / s.sigma;
            return s.shape / s.sigma * std::pow(z, s.shape - 1.0) *
                   std::exp(-std::pow(z, s.shape));
        }
    }
    return 0.0;
}

// P(X <= t) for the uncensored family; -expm1 keeps small-mass cases exact.
double raw_cdf(const TransmissionSpec& s, double t) {
    switch (s.family) {
        case Family::exponential:
            return -std::expm1(-s.lambda * t);
        case Family::rayleigh: {
            double z = t / s.sigma;
            return -std::expm1(-0.5 * z * z);
        }
        case Family::weibull:
            return -std::expm1(-std::pow(t / s.sigma, s.shape));
    }
    return 0.0;
}

void fill_kappas_grid(TransmissionSpec& s) {
    double lo = raw_density(s, 0.0);
    double hi = lo;
    for (int i = 1; i < kGridPoints; ++i) {
        double t = s.horizon * static_cast<double>(i) / (kGridPoints - 1);
        double f = raw_density(s, t);
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    double mass = raw_cdf(s, s.horizon);
    s.kappa1 = lo / mass;
    s.kappa2 = hi / mass;
}

void check_horizon(double T) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::invalid_argument("horizon T must be positive and finite");
    }
}

}  // namespace

const char* to_string(Family family) {
    switch (family) {
        case Family::exponential: return "exponential";
        case Family::rayleigh: return "rayleigh";
        case Family::weibull: return "weibull";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    if (name == "exponential") return Family::exponential;
    if (name == "rayleigh") return Family::rayleigh;
    if (name == "weibull") return Family::weibull;
    throw std::invalid_argument("unknown transmission family '" + name + "'");
}

TransmissionSpec TransmissionSpec::exponential(double lambda, double T) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("exponential rate lambda must be positive");
    }
    check_horizon(T);
    TransmissionSpec s;
    s.family = Family::exponential;
    s.lambda = lambda;
    s.horizon = T;
    double mass = -std::expm1(-lambda * T);  // 1 - e^{-lambda T}
    s.kappa1 = lambda * std::exp(-lambda * T) / mass;
    s.kappa2 = lambda / mass;
    return s;
}

TransmissionSpec TransmissionSpec::rayleigh(double sigma, double T) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("rayleigh scale sigma must be positive");
    }
    check_horizon(T);
    TransmissionSpec s;
    s.family = Family::rayleigh;
    s.sigma = sigma;
    s.horizon = T;
    fill_kappas_grid(s);
    return s;
}

TransmissionSpec TransmissionSpec::weibull(double shape, double scale, double T) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("weibull scale must be positive");
    }
    if (!(shape >= 1.0) || !std::isfinite(shape)) {
        throw std::invalid_argument(
            "weibull shape must be >= 1: the density is unbounded at 0 otherwise");
    }
    check_horizon(T);
    TransmissionSpec s;
    s.family = Family::weibull;
    s.shape = shape;
    s.sigma = scale;
    s.horizon = T;
    fill_kappas_grid(s);
    return s;
}

double transmission_density(const TransmissionSpec& spec, double t) {
    if (!(t >= 0.0 && t <= spec.horizon)) {
        throw std::domain_error("transmission time outside [0,T]");
    }
    return raw_density(spec, t) / raw_cdf(spec, spec.horizon);
}

double transmission_cdf(const TransmissionSpec& spec, double t) {
    if (!(t >= 0.0 && t <= spec.horizon)) {
        throw std::domain_error("transmission time outside [0,T]");
    }
    return raw_cdf(spec, t) / raw_cdf(spec, spec.horizon);
}

double transmission_quantile(const TransmissionSpec& spec, double u) {
    if (!(u >= 0.0 && u < 1.0)) {
        throw std::domain_error("quantile argument outside [0,1)");
    }
    double y = u * raw_cdf(spec, spec.horizon);  // mass below the result
    double t = 0.0;
    switch (spec.family) {
        case Family::exponential:
            t = -std::log1p(-y) / spec.lambda;
            break;
        case Family::rayleigh:
            t = spec.sigma * std::sqrt(-2.0 * std::log1p(-y));
            break;
        case Family::weibull:
            t = spec.sigma * std::pow(-std::log1p(-y), 1.0 / spec.shape);
            break;
    }
    return std::min(t, spec.horizon);
}

Kappas boundedness_constants(const TransmissionSpec& spec) {
    if (spec.kappa1 <= kKappaTolerance) {
        throw std::domain_error(
            "boundedness condition violated: density minimum vanishes on [0,T]");
    }
    return {spec.kappa1, spec.kappa2};
}

}  // namespace diffnet
