#include "diffnet/likelihood.hpp"

#include <cmath>
#include <stdexcept>

namespace diffnet {

double loglik_discrete(const DiscreteCascade& cascade, const Hypothesis& hyp,
                       const ModelParams& params) {
    if (static_cast<int>(cascade.parent_active.size()) != params.p()) {
        throw std::invalid_argument("cascade dimension does not match p");
    }
    validate_hypothesis(hyp, params);

    int active_total = 0;
    for (std::uint8_t f : cascade.parent_active) active_total += f ? 1 : 0;
    int active_in_hyp = 0;
    for (int idx : hyp.parents) active_in_hyp += cascade.parent_active[idx - 1] ? 1 : 0;

    double ll = active_total * std::log(params.theta0()) +
                (params.p() - active_total) * std::log1p(-params.theta0());
    ll += cascade.child_active ? log_child_active_prob(active_in_hyp, params)
                               : log_child_inactive_prob(active_in_hyp, params);
    return ll;
}

double loglik_continuous(const ContinuousCascade& cascade, const Hypothesis& hyp,
                         const ModelParams& params, const TransmissionSpec& spec) {
    if (static_cast<int>(cascade.parent_times.size()) != params.p()) {
        throw std::invalid_argument("cascade dimension does not match p");
    }
    if (cascade.horizon != spec.horizon) {
        throw std::invalid_argument("cascade horizon does not match the transmission spec");
    }
    validate_hypothesis(hyp, params);

    const double T = spec.horizon;
    double ll = 0.0;
    for (const auto& t : cascade.parent_times) {
        if (t) {
            if (!(*t >= 0.0 && *t <= T)) {
                throw std::domain_error("finite parent time outside [0,T]");
            }
            ll += std::log(params.theta0()) + std::log(transmission_density(spec, *t));
        } else {
            ll += std::log1p(-params.theta0());
        }
    }

    int active_in_hyp = 0;
    for (int idx : hyp.parents) active_in_hyp += cascade.parent_times[idx - 1] ? 1 : 0;

    if (cascade.child_time) {
        double tc = *cascade.child_time;
        if (!(tc >= T && tc <= 2.0 * T)) {
            throw std::domain_error("finite child time outside [T,2T]");
        }
        ll += log_child_active_prob(active_in_hyp, params) +
              std::log(transmission_density(spec, tc - T));
    } else {
        ll += log_child_inactive_prob(active_in_hyp, params);
    }
    return ll;
}

}  // namespace diffnet
