#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "diffnet/model.hpp"

using namespace diffnet;

TEST_CASE("derive_theta matches the closed form") {
    CHECK(derive_theta(0.25, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(derive_theta(0.5, 1) == doctest::Approx(0.5).epsilon(1e-15));
    // 1 - 2^{-1/5}, frozen from an independent arbitrary-precision evaluation.
    CHECK(derive_theta(0.5, 5) == doctest::Approx(0.12944943670387586).epsilon(1e-14));
}

TEST_CASE("derive_theta rejects out-of-range arguments") {
    CHECK_THROWS_AS(derive_theta(0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(derive_theta(1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(derive_theta(-0.3, 2), std::invalid_argument);
    CHECK_THROWS_AS(derive_theta(0.5, 0), std::invalid_argument);
}

TEST_CASE("(1-theta)^k recovers theta0") {
    for (double theta0 : {0.01, 0.3, 0.5, 0.7, 0.99}) {
        for (int k : {1, 2, 3, 5, 17, 100}) {
            double theta = derive_theta(theta0, k);
            CHECK(std::abs(std::pow(1.0 - theta, k) - theta0) < 1e-12);
        }
    }
}

TEST_CASE("theta decreases with k") {
    for (double theta0 : {0.3, 0.5, 0.9}) {
        double prev = derive_theta(theta0, 1);
        for (int k = 2; k <= 30; ++k) {
            double cur = derive_theta(theta0, k);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("ModelParams validation") {
    CHECK_NOTHROW(ModelParams(10, 2, 0.5));
    CHECK_NOTHROW(ModelParams(3, 3, 0.5));  // k == p: one-hypothesis class
    CHECK_THROWS_AS(ModelParams(10, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, 11, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(0, 0, 0.5), std::invalid_argument);
}

TEST_CASE("hypothesis validation") {
    ModelParams params(5, 2, 0.5);
    CHECK_NOTHROW(validate_hypothesis(Hypothesis{{1, 5}}, params));
    CHECK_THROWS_AS(validate_hypothesis(Hypothesis{{1}}, params), std::invalid_argument);
    CHECK_THROWS_AS(validate_hypothesis(Hypothesis{{2, 2}}, params), std::invalid_argument);
    CHECK_THROWS_AS(validate_hypothesis(Hypothesis{{3, 2}}, params), std::invalid_argument);
    CHECK_THROWS_AS(validate_hypothesis(Hypothesis{{1, 6}}, params), std::invalid_argument);
    CHECK_THROWS_AS(validate_hypothesis(Hypothesis{{0, 1}}, params), std::invalid_argument);
}

TEST_CASE("overlap counts shared indices") {
    CHECK(overlap(Hypothesis{{1, 2, 3}}, Hypothesis{{3, 4, 5}}) == 1);
    CHECK(overlap(Hypothesis{{1, 2}}, Hypothesis{{3, 4}}) == 0);
    CHECK(overlap(Hypothesis{{2, 7}}, Hypothesis{{2, 7}}) == 2);
}

TEST_CASE("child_activation_prob examples") {
    // a = 0 leaves only the helper-source term 1 - (1-theta0).
    CHECK(child_activation_prob(0, ModelParams(4, 2, 0.5)) ==
          doctest::Approx(0.5).epsilon(1e-15));
    // a = k: (1-theta)^k == theta0, so the probability is 1 - theta0(1-theta0).
    for (double theta0 : {0.3, 0.5, 0.8}) {
        ModelParams params(6, 3, theta0);
        CHECK(child_activation_prob(3, params) ==
              doctest::Approx(1.0 - theta0 * (1.0 - theta0)).epsilon(1e-13));
    }
    // a=1, k=1, theta0=0.5: 1 - 0.5 * 0.5.
    CHECK(child_activation_prob(1, ModelParams(3, 1, 0.5)) ==
          doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("child_activation_prob is strictly increasing in a") {
    for (double theta0 : {0.2, 0.5, 0.9}) {
        ModelParams params(12, 6, theta0);
        double prev = child_activation_prob(0, params);
        for (int a = 1; a <= 6; ++a) {
            double cur = child_activation_prob(a, params);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("child_activation_prob rejects a outside [0,k]") {
    ModelParams params(5, 2, 0.5);
    CHECK_THROWS_AS(child_activation_prob(3, params), std::invalid_argument);
    CHECK_THROWS_AS(child_activation_prob(-1, params), std::invalid_argument);
}

TEST_CASE("active and inactive child log-probabilities complement") {
    ModelParams params(9, 4, 0.37);
    for (int a = 0; a <= 4; ++a) {
        double q = std::exp(log_child_active_prob(a, params));
        double r = std::exp(log_child_inactive_prob(a, params));
        CHECK(q + r == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("model kind and hypothesis text forms") {
    CHECK(model_kind_from_string("discrete") == ModelKind::discrete);
    CHECK(model_kind_from_string("continuous") == ModelKind::continuous);
    CHECK_THROWS_AS(model_kind_from_string("other"), std::invalid_argument);
    CHECK(to_string(Hypothesis{{1, 4, 7}}) == "1|4|7");
}
