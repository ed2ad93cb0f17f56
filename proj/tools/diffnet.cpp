// Command-line surface for the diffusion-network lower-bound toolkit. Every
// subcommand is a thin adapter over the library; no numeric logic lives here.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diffnet/bounds.hpp"
#include "diffnet/harness.hpp"
#include "diffnet/inference.hpp"
#include "diffnet/io.hpp"
#include "diffnet/simulate.hpp"
#include "diffnet/version.hpp"

namespace {

using namespace diffnet;

struct TransmissionArgs {
    std::string family = "exponential";
    double lambda = 0.0;
    double sigma = 0.0;
    double mu = 0.0;
    double T = 0.0;
};

void add_transmission_options(CLI::App* cmd, TransmissionArgs& args) {
    cmd->add_option("--family", args.family, "transmission family: exponential|rayleigh|weibull");
    cmd->add_option("--lambda", args.lambda, "exponential rate");
    cmd->add_option("--sigma", args.sigma, "rayleigh scale (also the weibull scale)");
    cmd->add_option("--mu", args.mu, "weibull shape (>= 1)");
    cmd->add_option("--T", args.T, "horizon T");
}

TransmissionSpec build_spec(const TransmissionArgs& args) {
    switch (family_from_string(args.family)) {
        case Family::exponential:
            return TransmissionSpec::exponential(args.lambda, args.T);
        case Family::rayleigh:
            return TransmissionSpec::rayleigh(args.sigma, args.T);
        case Family::weibull:
            return TransmissionSpec::weibull(args.mu, args.sigma, args.T);
    }
    throw std::invalid_argument("unreachable family");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    os << text;
    if (!os) throw std::runtime_error("write to '" + out_path + "' failed");
}

int run_simulate(const std::string& model, int p, int k, double theta0,
                 const TransmissionArgs& targs, long long n, std::uint64_t seed,
                 const std::string& truth_text, const std::string& out) {
    ModelParams params(p, k, theta0);
    Hypothesis truth;
    if (truth_text.empty()) {
        for (int i = 1; i <= k; ++i) truth.parents.push_back(i);
    } else {
        truth = parse_hypothesis(truth_text);
    }
    validate_hypothesis(truth, params);

    Dataset data{params, model_kind_from_string(model), std::nullopt, {}, {}};
    if (data.kind == ModelKind::discrete) {
        data.discrete = simulate_discrete_dataset(params, truth, n, seed);
    } else {
        data.spec = build_spec(targs);
        data.continuous = simulate_continuous_dataset(params, truth, *data.spec, n, seed);
    }
    write_cascades(out, data);
    return 0;
}

int run_kl(int p, int k, double theta0, const std::string& model,
           const TransmissionArgs& targs, const std::string& piA_text,
           const std::string& piB_text, bool sweep, bool exact, bool bound_only,
           const std::string& out) {
    ModelParams params(p, k, theta0);
    ModelKind kind = model_kind_from_string(model);
    std::optional<TransmissionSpec> spec;
    if (kind == ModelKind::continuous) spec = build_spec(targs);

    const double bound =
        kind == ModelKind::discrete
            ? kl_bound_discrete(theta0)
            : kl_bound_continuous(theta0, boundedness_constants(*spec).kappa1,
                                  boundedness_constants(*spec).kappa2);
    const bool want_exact = exact || !bound_only;

    auto make_report = [&](const Hypothesis& a, const Hypothesis& b) {
        KlReport r;
        r.a = a;
        r.b = b;
        r.overlap = overlap(a, b);
        r.exact_kl = std::numeric_limits<double>::quiet_NaN();
        if (want_exact) {
            r.exact_kl = kind == ModelKind::discrete
                             ? kl_exact_discrete(params, a, b)
                             : kl_exact_continuous(params, a, b, *spec);
        }
        r.bound = bound;
        return r;
    };

    std::string text = kl_csv_header() + "\n";
    if (sweep) {
        auto hyps = enumerate_hypotheses(p, k);
        for (const auto& a : hyps) {
            for (const auto& b : hyps) text += kl_csv_row(make_report(a, b)) + "\n";
        }
    } else {
        Hypothesis a = parse_hypothesis(piA_text);
        Hypothesis b = parse_hypothesis(piB_text);
        validate_hypothesis(a, params);
        validate_hypothesis(b, params);
        text += kl_csv_row(make_report(a, b)) + "\n";
    }
    emit(text, out);
    return 0;
}

int run_mi(int p, int k, double theta0, const std::string& out) {
    ModelParams params(p, k, theta0);
    std::string text = "p,k,theta0,mi_exact,pairwise_exact_avg,pairwise_klmax_bound\n";
    text += std::to_string(p) + "," + std::to_string(k) + "," + format_g15(theta0) + "," +
            format_g15(mi_exact_single_sample(params)) + "," +
            format_g15(mi_pairwise_exact_avg(1, params)) + "," +
            format_g15(mi_pairwise_bound(1, params, ModelKind::discrete)) + "\n";
    emit(text, out);
    return 0;
}

int run_threshold(const std::string& model, int p, int k, double theta0, double lambda,
                  double T, double kappa1, double kappa2, const std::string& out) {
    ThresholdReport report;
    if (model_kind_from_string(model) == ModelKind::discrete) {
        report = fano_threshold_discrete(p, k, theta0);
    } else if (kappa1 > 0.0 || kappa2 > 0.0) {
        report = fano_threshold_continuous(p, k, theta0, kappa1, kappa2);
    } else {
        report = fano_threshold_exponential(p, k, theta0, lambda, T);
    }
    emit(threshold_csv_header() + "\n" + threshold_csv_row(report) + "\n", out);
    return 0;
}

int run_experiment_cmd(const std::string& config_path, const std::string& out_override) {
    ExperimentConfig config = parse_config(config_path);
    if (!out_override.empty()) config.out = out_override;
    ExperimentResult result = run_experiment(config);
    if (config.out.empty()) {
        std::cout << results_csv(result);
    } else {
        write_results(config.out, result);
    }
    return 0;
}

int run_verify(bool lemma1, bool lemma2, bool mi_chain, int pmax, int kmax) {
    if (!lemma1 && !lemma2 && !mi_chain) {
        throw std::invalid_argument("verify requires one of --lemma1, --lemma2, --mi-chain");
    }
    bool all_pass = true;
    int instances = 0;
    auto line = [&](bool pass, const std::string& body) {
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << body << "\n";
        all_pass = all_pass && pass;
        ++instances;
    };

    if (lemma1) {
        for (const auto& c : verify_lemma1(pmax, kmax)) {
            line(c.pass(), "lemma1 p=" + std::to_string(c.p) + " k=" + std::to_string(c.k) +
                               " theta0=" + format_g15(c.theta0) +
                               " pairs=" + std::to_string(c.pairs) +
                               " max_kl=" + format_g15(c.max_kl) +
                               " bound=" + format_g15(c.bound) +
                               " max_at_overlap=" + std::to_string(c.max_at_overlap));
        }
    }
    if (lemma2) {
        for (const auto& c : verify_lemma2(pmax, kmax)) {
            line(c.pass(), "lemma2 p=" + std::to_string(c.p) + " k=" + std::to_string(c.k) +
                               " theta0=" + format_g15(c.theta0) +
                               " lambda=" + format_g15(c.lambda) + " T=" + format_g15(c.T) +
                               " max_kl=" + format_g15(c.max_kl) +
                               " bound=" + format_g15(c.bound) +
                               " discrete_gap=" + format_g15(c.max_discrete_gap));
        }
    }
    if (mi_chain) {
        for (const auto& c : verify_mi_chain(pmax, kmax)) {
            line(c.pass(), "mi-chain p=" + std::to_string(c.p) + " k=" + std::to_string(c.k) +
                               " theta0=" + format_g15(c.theta0) +
                               " mi=" + format_g15(c.mi_exact) +
                               " pair_avg=" + format_g15(c.pairwise_avg) +
                               " klmax=" + format_g15(c.klmax));
        }
    }
    std::cout << (all_pass ? "verify: all " : "verify: FAILURES among ") << instances
              << " instances" << (all_pass ? " passed" : "") << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-layer diffusion networks: simulators, exact KL/MI, and "
                 "Fano sample-complexity thresholds"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "draw cascades and write a cascade file");
    std::string sim_model;
    int sim_p = 0, sim_k = 0;
    double sim_theta0 = 0.0;
    TransmissionArgs sim_targs;
    long long sim_n = 0;
    std::uint64_t sim_seed = 0;
    std::string sim_truth, sim_out;
    sim->add_option("--model", sim_model, "discrete|continuous")->required();
    sim->add_option("--p", sim_p, "parent count")->required();
    sim->add_option("--k", sim_k, "parent-set size")->required();
    sim->add_option("--theta0", sim_theta0, "source probability")->required();
    add_transmission_options(sim, sim_targs);
    sim->add_option("--n", sim_n, "sample count")->required();
    sim->add_option("--seed", sim_seed, "RNG seed (required: no default)")->required();
    sim->add_option("--truth", sim_truth, "true parent set, e.g. 2,5 (default 1..k)");
    sim->add_option("--out", sim_out, "output cascade file")->required();

    // kl
    auto* kl = app.add_subcommand("kl", "exact KL divergence and closed-form bound");
    int kl_p = 0, kl_k = 0;
    double kl_theta0 = 0.0;
    std::string kl_model = "discrete", kl_piA, kl_piB, kl_out;
    TransmissionArgs kl_targs;
    bool kl_sweep = false, kl_exact = false, kl_bound = false;
    kl->add_option("--p", kl_p)->required();
    kl->add_option("--k", kl_k)->required();
    kl->add_option("--theta0", kl_theta0)->required();
    kl->add_option("--model", kl_model, "discrete|continuous (default discrete)");
    add_transmission_options(kl, kl_targs);
    kl->add_option("--piA", kl_piA, "first hypothesis, e.g. 1,2");
    kl->add_option("--piB", kl_piB, "second hypothesis");
    kl->add_flag("--sweep", kl_sweep, "all ordered hypothesis pairs");
    kl->add_flag("--exact", kl_exact, "compute the exact KL (default)");
    kl->add_flag("--bound", kl_bound, "closed-form bound only");
    kl->add_option("--out", kl_out, "output file (default stdout)");

    // mi
    auto* mi = app.add_subcommand("mi", "exact single-sample mutual information and bounds");
    int mi_p = 0, mi_k = 0;
    double mi_theta0 = 0.0;
    std::string mi_out;
    mi->add_option("--p", mi_p)->required();
    mi->add_option("--k", mi_k)->required();
    mi->add_option("--theta0", mi_theta0)->required();
    mi->add_option("--out", mi_out, "output file (default stdout)");

    // threshold
    auto* th = app.add_subcommand("threshold", "Fano sample-complexity threshold");
    std::string th_model, th_out;
    int th_p = 0, th_k = 0;
    double th_theta0 = 0.0, th_lambda = 0.0, th_T = 0.0, th_kappa1 = 0.0, th_kappa2 = 0.0;
    th->add_option("--model", th_model, "discrete|continuous")->required();
    th->add_option("--p", th_p)->required();
    th->add_option("--k", th_k)->required();
    th->add_option("--theta0", th_theta0)->required();
    th->add_option("--lambda", th_lambda, "exponential rate (continuous)");
    th->add_option("--T", th_T, "horizon (continuous)");
    th->add_option("--kappa1", th_kappa1, "density lower bound (continuous)");
    th->add_option("--kappa2", th_kappa2, "density upper bound (continuous)");
    th->add_option("--out", th_out, "output file (default stdout)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Monte Carlo failure-rate experiment");
    std::string exp_config, exp_out;
    exp->add_option("--config", exp_config, "experiment config file")->required();
    exp->add_option("--out", exp_out, "result CSV path (overrides config out)");

    // verify
    auto* ver = app.add_subcommand("verify", "exhaustive invariant suites");
    bool ver_lemma1 = false, ver_lemma2 = false, ver_mi = false;
    int ver_pmax = 0, ver_kmax = 0;
    ver->add_flag("--lemma1", ver_lemma1, "discrete KL bound suite");
    ver->add_flag("--lemma2", ver_lemma2, "continuous KL bound suite");
    ver->add_flag("--mi-chain", ver_mi, "MI inequality chain suite");
    ver->add_option("--pmax", ver_pmax, "largest p")->required();
    ver->add_option("--kmax", ver_kmax, "largest k")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (sim->parsed()) {
            return run_simulate(sim_model, sim_p, sim_k, sim_theta0, sim_targs, sim_n,
                                sim_seed, sim_truth, sim_out);
        }
        if (kl->parsed()) {
            const bool pair_mode = !kl_piA.empty() || !kl_piB.empty();
            if (pair_mode == kl_sweep) {
                throw std::invalid_argument("kl requires either --piA/--piB or --sweep");
            }
            if (pair_mode && (kl_piA.empty() || kl_piB.empty())) {
                throw std::invalid_argument("kl requires both --piA and --piB");
            }
            return run_kl(kl_p, kl_k, kl_theta0, kl_model, kl_targs, kl_piA, kl_piB,
                          kl_sweep, kl_exact, kl_bound, kl_out);
        }
        if (mi->parsed()) return run_mi(mi_p, mi_k, mi_theta0, mi_out);
        if (th->parsed()) {
            return run_threshold(th_model, th_p, th_k, th_theta0, th_lambda, th_T,
                                 th_kappa1, th_kappa2, th_out);
        }
        if (exp->parsed()) return run_experiment_cmd(exp_config, exp_out);
        if (ver->parsed()) return run_verify(ver_lemma1, ver_lemma2, ver_mi, ver_pmax, ver_kmax);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
