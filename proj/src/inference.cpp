#include "diffnet/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace diffnet {

namespace {

constexpr std::uint64_t kEnumerationGuard = 10000000;

// Per-sample activation indicators, shared by both model kinds: the reduced
// estimators only look at which nodes activated.
struct Activity {
    std::vector<std::vector<std::uint8_t>> parents;  // [sample][node]
    std::vector<std::uint8_t> child;                 // [sample]
};

Activity extract_activity(const Dataset& data) {
    Activity act;
    act.parents.reserve(data.size());
    act.child.reserve(data.size());
    if (data.kind == ModelKind::discrete) {
        for (const auto& c : data.discrete) {
            act.parents.push_back(c.parent_active);
            act.child.push_back(c.child_active ? 1 : 0);
        }
    } else {
        for (const auto& c : data.continuous) {
            std::vector<std::uint8_t> row(c.parent_times.size());
            for (std::size_t i = 0; i < c.parent_times.size(); ++i) {
                row[i] = c.parent_times[i].has_value() ? 1 : 0;
            }
            act.parents.push_back(std::move(row));
            act.child.push_back(c.child_time.has_value() ? 1 : 0);
        }
    }
    return act;
}

void require_nonempty(const Dataset& data) {
    if (data.size() == 0) {
        throw std::invalid_argument("estimator requires at least one sample");
    }
}

}  // namespace

Dataset make_discrete_dataset(const ModelParams& params,
                              std::vector<DiscreteCascade> samples) {
    Dataset d{params, ModelKind::discrete, std::nullopt, std::move(samples), {}};
    validate_dataset(d);
    return d;
}

Dataset make_continuous_dataset(const ModelParams& params, const TransmissionSpec& spec,
                                std::vector<ContinuousCascade> samples) {
    Dataset d{params, ModelKind::continuous, spec, {}, std::move(samples)};
    validate_dataset(d);
    return d;
}

void validate_dataset(const Dataset& data) {
    if (data.kind == ModelKind::discrete) {
        if (data.spec || !data.continuous.empty()) {
            throw std::invalid_argument("discrete dataset carries continuous state");
        }
        for (const auto& c : data.discrete) {
            if (static_cast<int>(c.parent_active.size()) != data.params.p()) {
                throw std::invalid_argument("sample dimension does not match p");
            }
        }
    } else {
        if (!data.spec || !data.discrete.empty()) {
            throw std::invalid_argument("continuous dataset requires a transmission spec");
        }
        for (const auto& c : data.continuous) {
            if (static_cast<int>(c.parent_times.size()) != data.params.p()) {
                throw std::invalid_argument("sample dimension does not match p");
            }
            if (c.horizon != data.spec->horizon) {
                throw std::invalid_argument("sample horizon does not match the spec");
            }
        }
    }
}

std::uint64_t binomial_u64(int p, int k) {
    if (k < 0 || k > p) return 0;
    k = std::min(k, p - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // result * (p - k + i) / i is integral at every step.
        unsigned __int128 next = static_cast<unsigned __int128>(result) *
                                 static_cast<unsigned __int128>(p - k + i);
        next /= static_cast<unsigned>(i);
        if (next > std::numeric_limits<std::uint64_t>::max()) {
            throw std::length_error("binomial coefficient overflows 64 bits");
        }
        result = static_cast<std::uint64_t>(next);
    }
    return result;
}

HypothesisEnumerator::HypothesisEnumerator(int p, int k) : p_(p), k_(k) {
    if (k < 1 || k > p) throw std::invalid_argument("enumeration requires 1 <= k <= p");
}

std::optional<Hypothesis> HypothesisEnumerator::next() {
    if (exhausted_) return std::nullopt;
    if (!started_) {
        started_ = true;
        current_.resize(k_);
        std::iota(current_.begin(), current_.end(), 1);
        return Hypothesis{current_};
    }
    // Advance the rightmost index that still has room.
    int i = k_ - 1;
    while (i >= 0 && current_[i] == p_ - k_ + 1 + i) --i;
    if (i < 0) {
        exhausted_ = true;
        return std::nullopt;
    }
    ++current_[i];
    for (int j = i + 1; j < k_; ++j) current_[j] = current_[j - 1] + 1;
    return Hypothesis{current_};
}

std::vector<Hypothesis> enumerate_hypotheses(int p, int k) {
    std::uint64_t count = binomial_u64(p, k);
    if (count > kEnumerationGuard) {
        throw std::length_error("hypothesis class exceeds the enumeration guard");
    }
    std::vector<Hypothesis> out;
    out.reserve(count);
    HypothesisEnumerator en(p, k);
    while (auto h = en.next()) out.push_back(std::move(*h));
    return out;
}

Hypothesis hypothesis_from_index(int p, int k, std::uint64_t index) {
    if (k < 1 || k > p) throw std::invalid_argument("unranking requires 1 <= k <= p");
    if (index >= binomial_u64(p, k)) {
        throw std::invalid_argument("hypothesis index out of range");
    }
    Hypothesis hyp;
    hyp.parents.reserve(k);
    int value = 1;
    for (int pos = 0; pos < k; ++pos) {
        for (;;) {
            std::uint64_t block = binomial_u64(p - value, k - pos - 1);
            if (index < block) break;
            index -= block;
            ++value;
        }
        hyp.parents.push_back(value);
        ++value;
    }
    return hyp;
}

Hypothesis ml_estimate(const Dataset& data) {
    validate_dataset(data);
    require_nonempty(data);
    const int p = data.params.p();
    const int k = data.params.k();
    if (binomial_u64(p, k) > kEnumerationGuard) {
        throw std::length_error("hypothesis class exceeds the enumeration guard");
    }

    std::vector<double> log_active(k + 1), log_inactive(k + 1);
    for (int a = 0; a <= k; ++a) {
        log_active[a] = log_child_active_prob(a, data.params);
        log_inactive[a] = log_child_inactive_prob(a, data.params);
    }
    Activity act = extract_activity(data);
    const std::size_t n = act.child.size();

    double best = -std::numeric_limits<double>::infinity();
    Hypothesis best_hyp;
    HypothesisEnumerator en(p, k);
    while (auto h = en.next()) {
        double score = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const auto& row = act.parents[s];
            int a = 0;
            for (int idx : h->parents) a += row[idx - 1];
            score += act.child[s] ? log_active[a] : log_inactive[a];
        }
        // Strict improvement keeps the lexicographically first maximizer.
        if (score > best) {
            best = score;
            best_hyp = std::move(*h);
        }
    }
    return best_hyp;
}

Hypothesis ml_estimate_full(const Dataset& data) {
    validate_dataset(data);
    require_nonempty(data);
    const int p = data.params.p();
    const int k = data.params.k();
    if (binomial_u64(p, k) > kEnumerationGuard) {
        throw std::length_error("hypothesis class exceeds the enumeration guard");
    }

    double best = -std::numeric_limits<double>::infinity();
    Hypothesis best_hyp;
    HypothesisEnumerator en(p, k);
    while (auto h = en.next()) {
        double score = 0.0;
        if (data.kind == ModelKind::discrete) {
            for (const auto& c : data.discrete) score += loglik_discrete(c, *h, data.params);
        } else {
            for (const auto& c : data.continuous) {
                score += loglik_continuous(c, *h, data.params, *data.spec);
            }
        }
        if (score > best) {
            best = score;
            best_hyp = std::move(*h);
        }
    }
    return best_hyp;
}

Hypothesis absence_score_estimate(const Dataset& data) {
    validate_dataset(data);
    require_nonempty(data);
    const int p = data.params.p();
    const int k = data.params.k();

    Activity act = extract_activity(data);
    std::vector<long long> score(p, 0);
    for (std::size_t s = 0; s < act.child.size(); ++s) {
        if (act.child[s]) continue;
        const auto& row = act.parents[s];
        for (int i = 0; i < p; ++i) score[i] += row[i];
    }

    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return score[a] < score[b]; });

    Hypothesis hyp;
    hyp.parents.reserve(k);
    for (int i = 0; i < k; ++i) hyp.parents.push_back(order[i] + 1);
    std::sort(hyp.parents.begin(), hyp.parents.end());
    return hyp;
}

}  // namespace diffnet
