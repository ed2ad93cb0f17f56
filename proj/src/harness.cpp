#include "diffnet/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "diffnet/inference.hpp"
#include "diffnet/simulate.hpp"

namespace diffnet {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kC2 = 0xC2B2AE3D27D4EB4Full;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

using Estimator = Hypothesis (*)(const Dataset&);

Estimator estimator_by_name(const std::string& name) {
    if (name == "ml") return &ml_estimate;
    if (name == "absence") return &absence_score_estimate;
    throw std::invalid_argument("unknown estimator '" + name + "' (expected ml|absence)");
}

void validate_config(const ExperimentConfig& config) {
    estimator_by_name(config.estimator);
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (config.n_grid.empty()) throw std::invalid_argument("n_grid must be non-empty");
    long long prev = 0;
    for (long long n : config.n_grid) {
        if (n <= prev) throw std::invalid_argument("n_grid must be strictly increasing and positive");
        prev = n;
    }
    if (config.kind == ModelKind::continuous && !config.spec) {
        throw std::invalid_argument("continuous experiments require a transmission spec");
    }
    if (config.kind == ModelKind::discrete && config.spec) {
        throw std::invalid_argument("discrete experiments must not carry a transmission spec");
    }
}

// Runs body(t) for t in [0, trials) across threads; any thread count yields
// the same result because each trial is seeded independently.
void for_each_trial(int trials, const std::function<void(int)>& body) {
    unsigned hw = std::thread::hardware_concurrency();
    int nthreads = std::min<int>(hw == 0 ? 1 : static_cast<int>(hw), trials);
    if (nthreads <= 1) {
        for (int t = 0; t < trials; ++t) body(t);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int tid = 0; tid < nthreads; ++tid) {
        pool.emplace_back([&, tid] {
            try {
                for (int t = tid; t < trials; t += nthreads) body(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t n_index,
                       std::uint64_t trial_index) {
    std::uint64_t h = mix64(master_seed + kGamma);
    h = mix64(h ^ (kGamma * (n_index + 1)));
    h = mix64(h ^ (kC2 * (trial_index + 1)));
    return h;
}

WilsonInterval wilson95(int failures, int trials) {
    if (trials < 1) throw std::invalid_argument("wilson95 requires trials >= 1");
    if (failures < 0 || failures > trials) {
        throw std::invalid_argument("failures must lie in [0, trials]");
    }
    constexpr double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = trials;
    const double phat = static_cast<double>(failures) / n;
    const double z2n = z * z / n;
    WilsonInterval w;
    w.center = (phat + z2n / 2.0) / (1.0 + z2n);
    w.halfwidth = z / (1.0 + z2n) * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n));
    w.lo = std::max(0.0, w.center - w.halfwidth);
    w.hi = std::min(1.0, w.center + w.halfwidth);
    return w;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const Estimator estimate = estimator_by_name(config.estimator);
    const ModelParams& params = config.params;
    const std::uint64_t n_hyp = binomial_u64(params.p(), params.k());

    // The threshold comes from the bounds module; the harness never
    // recomputes the Fano arithmetic itself.
    ThresholdReport threshold;
    if (config.kind == ModelKind::discrete) {
        threshold = fano_threshold_discrete(params.p(), params.k(), params.theta0());
    } else {
        Kappas kappas = boundedness_constants(*config.spec);
        threshold = fano_threshold_continuous(params.p(), params.k(), params.theta0(),
                                              kappas.kappa1, kappas.kappa2);
    }

    ExperimentResult result;
    result.config = config;
    result.threshold = threshold;
    result.rows.reserve(config.n_grid.size());

    for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
        const long long n = config.n_grid[ni];
        std::vector<std::uint8_t> failed(config.trials, 0);

        for_each_trial(config.trials, [&](int trial) {
            Rng rng(mix_seed(config.master_seed, ni, trial));
            Hypothesis truth =
                hypothesis_from_index(params.p(), params.k(), rng.below(n_hyp));
            Dataset data{params, config.kind, std::nullopt, {}, {}};
            if (config.kind == ModelKind::discrete) {
                data.discrete.reserve(n);
                for (long long i = 0; i < n; ++i) {
                    data.discrete.push_back(draw_discrete(params, truth, rng));
                }
            } else {
                data.spec = config.spec;
                data.continuous.reserve(n);
                for (long long i = 0; i < n; ++i) {
                    data.continuous.push_back(draw_continuous(params, truth, *config.spec, rng));
                }
            }
            failed[trial] = estimate(data) != truth ? 1 : 0;
        });

        ExperimentRow row;
        row.n = n;
        row.trials = config.trials;
        row.failures = 0;
        for (std::uint8_t f : failed) row.failures += f;
        row.failure_rate = static_cast<double>(row.failures) / config.trials;
        row.wilson95 = wilson95(row.failures, config.trials).halfwidth;
        row.n_star = threshold.n_star;
        row.n_floor = threshold.n_floor;
        result.rows.push_back(row);
    }
    return result;
}

}  // namespace diffnet
