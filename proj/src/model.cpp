#include "diffnet/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace diffnet {

const char* to_string(ModelKind kind) {
    return kind == ModelKind::discrete ? "discrete" : "continuous";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "discrete") return ModelKind::discrete;
    if (name == "continuous") return ModelKind::continuous;
    throw std::invalid_argument("unknown model kind '" + name + "'");
}

double derive_theta(double theta0, int k) {
    if (!(theta0 > 0.0 && theta0 < 1.0)) {
        throw std::invalid_argument("theta0 must lie strictly in (0,1)");
    }
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    return 1.0 - std::pow(theta0, 1.0 / static_cast<double>(k));
}

ModelParams::ModelParams(int p, int k, double theta0) : p_(p), k_(k), theta0_(theta0) {
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    if (k < 1 || k > p) throw std::invalid_argument("k must satisfy 1 <= k <= p");
    if (!(theta0 > 0.0 && theta0 < 1.0)) {
        throw std::invalid_argument("theta0 must lie strictly in (0,1)");
    }
}

void validate_hypothesis(const Hypothesis& hyp, const ModelParams& params) {
    if (static_cast<int>(hyp.parents.size()) != params.k()) {
        throw std::invalid_argument("hypothesis must contain exactly k parents");
    }
    int prev = 0;
    for (int idx : hyp.parents) {
        if (idx <= prev) {
            throw std::invalid_argument("hypothesis indices must be strictly increasing");
        }
        if (idx > params.p()) {
            throw std::invalid_argument("hypothesis index exceeds p");
        }
        prev = idx;
    }
}

int overlap(const Hypothesis& a, const Hypothesis& b) {
    int count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.parents.size() && j < b.parents.size()) {
        if (a.parents[i] == b.parents[j]) {
            ++count;
            ++i;
            ++j;
        } else if (a.parents[i] < b.parents[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return count;
}

std::string to_string(const Hypothesis& hyp) {
    std::ostringstream os;
    for (std::size_t i = 0; i < hyp.parents.size(); ++i) {
        if (i > 0) os << '|';
        os << hyp.parents[i];
    }
    return os.str();
}

namespace {

void check_active_count(int a, const ModelParams& params) {
    if (a < 0) throw std::invalid_argument("active parent count must be >= 0");
    if (a > params.k()) {
        throw std::invalid_argument("active parent count exceeds the parent-set size k");
    }
}

}  // namespace

double log_child_inactive_prob(int active_parents, const ModelParams& params) {
    check_active_count(active_parents, params);
    // (1-theta)^a (1-theta0) with (1-theta) = theta0^{1/k} by definition.
    double frac = static_cast<double>(active_parents) / static_cast<double>(params.k());
    return frac * std::log(params.theta0()) + std::log1p(-params.theta0());
}

double child_activation_prob(int active_parents, const ModelParams& params) {
    return -std::expm1(log_child_inactive_prob(active_parents, params));
}

double log_child_active_prob(int active_parents, const ModelParams& params) {
    return std::log(-std::expm1(log_child_inactive_prob(active_parents, params)));
}

}  // namespace diffnet
