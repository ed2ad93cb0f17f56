#pragma once
// Quadrature oracles over the continuous sample space, driven entirely
// through loglik_continuous so they check the implementation end to end.

#include <cmath>
#include <cstdint>
#include <vector>

#include "diffnet/likelihood.hpp"
#include "support.hpp"

namespace testsupport {

// Total probability mass: sum over activation patterns, quadrature over the
// times of the active nodes. Given a pattern the integrand factorizes across
// nodes, so the multi-dimensional integral equals the product of per-node
// line integrals (other times held at a reference point) divided by the
// reference value once per extra dimension.
inline double total_probability_continuous(const diffnet::ModelParams& params,
                                           const diffnet::Hypothesis& hyp,
                                           const diffnet::TransmissionSpec& spec) {
    const int p = params.p();
    const double T = spec.horizon;
    const double tau = 0.5 * T;
    const auto& gl = gauss01();

    long double total = 0.0L;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
        for (int child = 0; child < 2; ++child) {
            diffnet::ContinuousCascade ref;
            ref.horizon = T;
            ref.parent_times.resize(p);
            std::vector<int> dims;  // parent indices; -1 marks the child time
            for (int i = 0; i < p; ++i) {
                if ((mask >> i) & 1) {
                    ref.parent_times[i] = tau;
                    dims.push_back(i);
                }
            }
            if (child) {
                ref.child_time = T + tau;
                dims.push_back(-1);
            }
            if (dims.empty()) {
                total += std::exp(
                    static_cast<long double>(loglik_continuous(ref, hyp, params, spec)));
                continue;
            }
            double log_ref = loglik_continuous(ref, hyp, params, spec);
            long double prod = 1.0L;
            for (int d : dims) {
                diffnet::ContinuousCascade c = ref;
                long double line = 0.0L;
                for (std::size_t q = 0; q < gl.x.size(); ++q) {
                    double x = T * gl.x[q];
                    if (d >= 0) {
                        c.parent_times[d] = x;
                    } else {
                        c.child_time = T + x;
                    }
                    line += static_cast<long double>(gl.w[q]) *
                            std::exp(static_cast<long double>(
                                loglik_continuous(c, hyp, params, spec)));
                }
                prod *= line * T;
            }
            total += prod / std::exp(static_cast<long double>(log_ref) *
                                     static_cast<long double>(dims.size() - 1));
        }
    }
    return static_cast<double>(total);
}

// Exact continuous KL at p = 2 by full tensor-product quadrature (no
// factorization assumption): sum over patterns of the integral of
// exp(llA) * (llA - llB) over the active times.
inline double kl_continuous_tensor_p2(const diffnet::ModelParams& params,
                                      const diffnet::Hypothesis& piA,
                                      const diffnet::Hypothesis& piB,
                                      const diffnet::TransmissionSpec& spec) {
    const double T = spec.horizon;
    const auto& gl = gauss01();
    const std::size_t Q = gl.x.size();

    long double total = 0.0L;
    for (int m1 = 0; m1 < 2; ++m1) {
        for (int m2 = 0; m2 < 2; ++m2) {
            for (int child = 0; child < 2; ++child) {
                // Iterate the tensor grid over the active dimensions.
                std::size_t q1max = m1 ? Q : 1;
                std::size_t q2max = m2 ? Q : 1;
                std::size_t qcmax = child ? Q : 1;
                for (std::size_t q1 = 0; q1 < q1max; ++q1) {
                    for (std::size_t q2 = 0; q2 < q2max; ++q2) {
                        for (std::size_t qc = 0; qc < qcmax; ++qc) {
                            diffnet::ContinuousCascade c;
                            c.horizon = T;
                            c.parent_times.resize(2);
                            long double w = 1.0L;
                            if (m1) {
                                c.parent_times[0] = T * gl.x[q1];
                                w *= gl.w[q1] * T;
                            }
                            if (m2) {
                                c.parent_times[1] = T * gl.x[q2];
                                w *= gl.w[q2] * T;
                            }
                            if (child) {
                                c.child_time = T + T * gl.x[qc];
                                w *= gl.w[qc] * T;
                            }
                            double lla = loglik_continuous(c, piA, params, spec);
                            double llb = loglik_continuous(c, piB, params, spec);
                            total += w * std::exp(static_cast<long double>(lla)) *
                                     (lla - llb);
                        }
                    }
                }
            }
        }
    }
    return static_cast<double>(total);
}

}  // namespace testsupport
