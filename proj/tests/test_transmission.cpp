#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "diffnet/transmission.hpp"
#include "support.hpp"

using namespace diffnet;

TEST_CASE("censored exponential density examples") {
    auto spec = TransmissionSpec::exponential(1.0, 1.0);
    // 1 / (1 - e^{-1}), frozen independently.
    CHECK(transmission_density(spec, 0.0) ==
          doctest::Approx(1.58197670686932642).epsilon(1e-14));
    // Monotone decreasing: extremes at the endpoints.
    CHECK(transmission_density(spec, 0.0) == doctest::Approx(spec.kappa2).epsilon(1e-14));
    CHECK(transmission_density(spec, 1.0) == doctest::Approx(spec.kappa1).epsilon(1e-14));
}

TEST_CASE("exponential boundedness constants") {
    auto spec = TransmissionSpec::exponential(1.0, 1.0);
    auto kap = boundedness_constants(spec);
    CHECK(kap.kappa1 == doctest::Approx(0.58197670686932642).epsilon(1e-14));
    CHECK(kap.kappa2 == doctest::Approx(1.58197670686932642).epsilon(1e-14));

    // kappa2/kappa1 = e^{lambda T} exactly.
    auto spec2 = TransmissionSpec::exponential(2.0, 1.5);
    auto kap2 = boundedness_constants(spec2);
    CHECK(kap2.kappa2 / kap2.kappa1 == doctest::Approx(std::exp(3.0)).epsilon(1e-12));

    // lambda -> 0+: the density flattens and the ratio tends to 1.
    auto flat = TransmissionSpec::exponential(1e-9, 1.0);
    CHECK(flat.kappa2 / flat.kappa1 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("grid constants match the analytic exponential constants") {
    // weibull with shape 1 is the exponential with lambda = 1/scale; its
    // kappas go through the grid path.
    auto grid = TransmissionSpec::weibull(1.0, 0.5, 1.0);
    auto exact = TransmissionSpec::exponential(2.0, 1.0);
    CHECK(grid.kappa1 == doctest::Approx(exact.kappa1).epsilon(1e-6));
    CHECK(grid.kappa2 == doctest::Approx(exact.kappa2).epsilon(1e-6));
}

TEST_CASE("every family integrates to one over the horizon") {
    const auto specs = {TransmissionSpec::exponential(1.0, 1.0),
                        TransmissionSpec::exponential(0.3, 2.5),
                        TransmissionSpec::rayleigh(0.7, 1.5),
                        TransmissionSpec::weibull(2.0, 1.0, 1.2),
                        TransmissionSpec::weibull(1.0, 2.0, 0.8)};
    for (const auto& spec : specs) {
        double mass = testsupport::simpson(
            [&](double t) { return transmission_density(spec, t); }, 0.0, spec.horizon,
            2000);
        CHECK(std::abs(mass - 1.0) < 1e-6);
    }
}

TEST_CASE("densities stay inside the stored kappa envelope") {
    const auto specs = {TransmissionSpec::exponential(2.0, 1.0),
                        TransmissionSpec::rayleigh(0.5, 1.0),
                        TransmissionSpec::weibull(1.5, 1.0, 1.0)};
    for (const auto& spec : specs) {
        for (int i = 0; i <= 5000; ++i) {
            double t = spec.horizon * i / 5000.0;
            double f = transmission_density(spec, t);
            CHECK(f >= spec.kappa1 - 1e-9);
            CHECK(f <= spec.kappa2 + 1e-9);
        }
    }
}

TEST_CASE("quantile inverts the censored cdf") {
    const auto specs = {TransmissionSpec::exponential(1.3, 2.0),
                        TransmissionSpec::rayleigh(0.6, 1.4),
                        TransmissionSpec::weibull(2.5, 0.9, 1.1)};
    for (const auto& spec : specs) {
        for (int i = 0; i < 200; ++i) {
            double u = i / 200.0;
            double t = transmission_quantile(spec, u);
            CHECK(t >= 0.0);
            CHECK(t <= spec.horizon);
            CHECK(transmission_cdf(spec, t) == doctest::Approx(u).epsilon(1e-9));
        }
    }
}

TEST_CASE("domain errors outside [0,T]") {
    auto spec = TransmissionSpec::exponential(1.0, 1.0);
    CHECK_THROWS_AS(transmission_density(spec, -0.1), std::domain_error);
    CHECK_THROWS_AS(transmission_density(spec, 1.1), std::domain_error);
    CHECK_THROWS_AS(transmission_cdf(spec, 2.0), std::domain_error);
    CHECK_THROWS_AS(transmission_quantile(spec, 1.0), std::domain_error);
    CHECK_THROWS_AS(transmission_quantile(spec, -0.5), std::domain_error);
}

TEST_CASE("weibull shape below one is rejected") {
    CHECK_THROWS_AS(TransmissionSpec::weibull(0.5, 1.0, 1.0), std::invalid_argument);
    CHECK_NOTHROW(TransmissionSpec::weibull(1.0, 1.0, 1.0));
}

TEST_CASE("vanishing density minimum violates the boundedness condition") {
    // Rayleigh and strict-shape weibull densities are zero at t = 0.
    CHECK_THROWS_AS(boundedness_constants(TransmissionSpec::rayleigh(1.0, 1.0)),
                    std::domain_error);
    CHECK_THROWS_AS(boundedness_constants(TransmissionSpec::weibull(2.0, 1.0, 1.0)),
                    std::domain_error);
    CHECK_NOTHROW(boundedness_constants(TransmissionSpec::weibull(1.0, 1.0, 1.0)));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(TransmissionSpec::exponential(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TransmissionSpec::exponential(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TransmissionSpec::rayleigh(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TransmissionSpec::weibull(2.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(family_from_string("gamma"), std::invalid_argument);
}
