#include "diffnet/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "diffnet/version.hpp"

namespace diffnet {

namespace {

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& token, const std::string& name, std::size_t line) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) fail(name, line, "bad number '" + token + "'");
    return value;
}

long long parse_int(const std::string& token, const std::string& name, std::size_t line) {
    long long value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) fail(name, line, "bad integer '" + token + "'");
    return value;
}

std::uint64_t parse_u64(const std::string& token, const std::string& name, std::size_t line) {
    std::uint64_t value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) fail(name, line, "bad seed '" + token + "'");
    return value;
}

// key=value pairs collected from a cascade header or config body.
using KeyValues = std::map<std::string, std::pair<std::string, std::size_t>>;

const std::pair<std::string, std::size_t>& require_key(const KeyValues& kv,
                                                       const std::string& key,
                                                       const std::string& name,
                                                       std::size_t line) {
    auto it = kv.find(key);
    if (it == kv.end()) fail(name, line, "missing required key '" + key + "'");
    return it->second;
}

void reject_key(const KeyValues& kv, const std::string& key, const std::string& name,
                const std::string& why) {
    auto it = kv.find(key);
    if (it != kv.end()) fail(name, it->second.second, "key '" + key + "' " + why);
}

TransmissionSpec spec_from_keys(const KeyValues& kv, const std::string& name,
                                std::size_t line) {
    Family family;
    try {
        family = family_from_string(require_key(kv, "family", name, line).first);
    } catch (const std::invalid_argument& e) {
        fail(name, kv.at("family").second, e.what());
    }
    double T = parse_double(require_key(kv, "T", name, line).first, name,
                            kv.at("T").second);
    switch (family) {
        case Family::exponential: {
            reject_key(kv, "sigma", name, "is not used by the exponential family");
            reject_key(kv, "mu", name, "is not used by the exponential family");
            double lambda = parse_double(require_key(kv, "lambda", name, line).first, name,
                                         kv.at("lambda").second);
            return TransmissionSpec::exponential(lambda, T);
        }
        case Family::rayleigh: {
            reject_key(kv, "lambda", name, "is not used by the rayleigh family");
            reject_key(kv, "mu", name, "is not used by the rayleigh family");
            double sigma = parse_double(require_key(kv, "sigma", name, line).first, name,
                                        kv.at("sigma").second);
            return TransmissionSpec::rayleigh(sigma, T);
        }
        case Family::weibull: {
            reject_key(kv, "lambda", name, "is not used by the weibull family");
            double mu = parse_double(require_key(kv, "mu", name, line).first, name,
                                     kv.at("mu").second);
            double sigma = parse_double(require_key(kv, "sigma", name, line).first, name,
                                        kv.at("sigma").second);
            return TransmissionSpec::weibull(mu, sigma, T);
        }
    }
    fail(name, line, "unreachable family");
}

std::string spec_header_keys(const TransmissionSpec& spec) {
    std::string out = " family=" + std::string(to_string(spec.family));
    switch (spec.family) {
        case Family::exponential:
            out += " lambda=" + format_exact(spec.lambda);
            break;
        case Family::rayleigh:
            out += " sigma=" + format_exact(spec.sigma);
            break;
        case Family::weibull:
            out += " mu=" + format_exact(spec.shape) + " sigma=" + format_exact(spec.sigma);
            break;
    }
    out += " T=" + format_exact(spec.horizon);
    return out;
}

}  // namespace

std::string format_g15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string format_exact(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_cascades_stream(std::ostream& os, const Dataset& data) {
    validate_dataset(data);
    os << "CASCADES v1 model=" << to_string(data.kind) << " p=" << data.params.p()
       << " k=" << data.params.k() << " theta0=" << format_exact(data.params.theta0());
    if (data.kind == ModelKind::continuous) os << spec_header_keys(*data.spec);
    os << '\n';

    if (data.kind == ModelKind::discrete) {
        for (const auto& c : data.discrete) {
            for (std::uint8_t f : c.parent_active) os << (f ? "1" : "inf") << ',';
            os << (c.child_active ? "2" : "inf") << '\n';
        }
    } else {
        for (const auto& c : data.continuous) {
            for (const auto& t : c.parent_times) {
                os << (t ? format_exact(*t) : "inf") << ',';
            }
            os << (c.child_time ? format_exact(*c.child_time) : "inf") << '\n';
        }
    }
}

void write_cascades(const std::string& path, const Dataset& data) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_cascades_stream(os, data);
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

Dataset read_cascades_stream(std::istream& is, const std::string& name) {
    std::string header;
    if (!std::getline(is, header)) fail(name, 1, "missing header line");
    auto tokens = split(trim(header), ' ');
    if (tokens.size() < 3 || tokens[0] != "CASCADES" || tokens[1] != "v1") {
        fail(name, 1, "header must start with 'CASCADES v1'");
    }
    KeyValues kv;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
        if (tokens[i].empty()) continue;
        std::size_t eq = tokens[i].find('=');
        if (eq == std::string::npos) fail(name, 1, "malformed header token '" + tokens[i] + "'");
        std::string key = tokens[i].substr(0, eq);
        if (kv.count(key)) fail(name, 1, "duplicate header key '" + key + "'");
        static const char* known[] = {"model", "p", "k", "theta0", "family",
                                      "lambda", "sigma", "mu", "T"};
        bool ok = false;
        for (const char* kn : known) ok = ok || key == kn;
        if (!ok) fail(name, 1, "unknown header key '" + key + "'");
        kv.emplace(key, std::make_pair(tokens[i].substr(eq + 1), std::size_t{1}));
    }

    ModelKind kind;
    try {
        kind = model_kind_from_string(require_key(kv, "model", name, 1).first);
    } catch (const std::invalid_argument& e) {
        fail(name, 1, e.what());
    }
    int p = static_cast<int>(parse_int(require_key(kv, "p", name, 1).first, name, 1));
    int k = static_cast<int>(parse_int(require_key(kv, "k", name, 1).first, name, 1));
    double theta0 = parse_double(require_key(kv, "theta0", name, 1).first, name, 1);

    Dataset data{ModelParams(p, k, theta0), kind, std::nullopt, {}, {}};
    if (kind == ModelKind::continuous) {
        data.spec = spec_from_keys(kv, name, 1);
    } else {
        for (const char* key : {"family", "lambda", "sigma", "mu", "T"}) {
            reject_key(kv, key, name, "is only valid for model=continuous");
        }
    }

    const double T = kind == ModelKind::continuous ? data.spec->horizon : 0.0;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        std::string body = trim(line);
        if (body.empty()) {
            if (is.eof()) break;  // trailing newline
            fail(name, line_no, "blank sample line");
        }
        auto fields = split(body, ',');
        if (static_cast<int>(fields.size()) != p + 1) {
            fail(name, line_no,
                 "expected " + std::to_string(p + 1) + " fields, got " +
                     std::to_string(fields.size()));
        }
        if (kind == ModelKind::discrete) {
            DiscreteCascade c;
            c.parent_active.resize(p);
            for (int i = 0; i < p; ++i) {
                if (fields[i] == "1") {
                    c.parent_active[i] = 1;
                } else if (fields[i] == "inf") {
                    c.parent_active[i] = 0;
                } else {
                    fail(name, line_no, "discrete parent entry must be 1 or inf, got '" +
                                            fields[i] + "'");
                }
            }
            if (fields[p] == "2") {
                c.child_active = true;
            } else if (fields[p] == "inf") {
                c.child_active = false;
            } else {
                fail(name, line_no,
                     "discrete child entry must be 2 or inf, got '" + fields[p] + "'");
            }
            data.discrete.push_back(std::move(c));
        } else {
            ContinuousCascade c;
            c.horizon = T;
            c.parent_times.resize(p);
            for (int i = 0; i < p; ++i) {
                if (fields[i] == "inf") continue;
                double t = parse_double(fields[i], name, line_no);
                if (!(t >= 0.0 && t <= T)) {
                    fail(name, line_no, "parent time outside [0,T]");
                }
                c.parent_times[i] = t;
            }
            if (fields[p] != "inf") {
                double t = parse_double(fields[p], name, line_no);
                if (!(t >= T && t <= 2.0 * T)) {
                    fail(name, line_no, "child time outside [T,2T]");
                }
                c.child_time = t;
            }
            data.continuous.push_back(std::move(c));
        }
    }
    validate_dataset(data);
    return data;
}

Dataset read_cascades(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_cascades_stream(is, path);
}

ExperimentConfig parse_config_stream(std::istream& is, const std::string& name) {
    static const char* kKnown[] = {"model", "p",     "k",      "theta0", "family",
                                   "lambda", "sigma", "mu",     "T",      "estimator",
                                   "n_grid", "trials", "seed",  "out"};
    KeyValues kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        std::size_t eq = body.find('=');
        if (eq == std::string::npos) fail(name, line_no, "expected 'key = value'");
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        bool ok = false;
        for (const char* kn : kKnown) ok = ok || key == kn;
        if (!ok) fail(name, line_no, "unknown key '" + key + "'");
        if (kv.count(key)) fail(name, line_no, "duplicate key '" + key + "'");
        if (value.empty()) fail(name, line_no, "empty value for key '" + key + "'");
        kv.emplace(key, std::make_pair(value, line_no));
    }

    ModelKind kind;
    try {
        kind = model_kind_from_string(require_key(kv, "model", name, line_no).first);
    } catch (const std::invalid_argument& e) {
        fail(name, kv.at("model").second, e.what());
    }
    int p = static_cast<int>(
        parse_int(require_key(kv, "p", name, line_no).first, name, kv.at("p").second));
    int k = static_cast<int>(
        parse_int(require_key(kv, "k", name, line_no).first, name, kv.at("k").second));
    double theta0 = parse_double(require_key(kv, "theta0", name, line_no).first, name,
                                 kv.at("theta0").second);

    ModelParams params = [&] {
        try {
            return ModelParams(p, k, theta0);
        } catch (const std::invalid_argument& e) {
            fail(name, kv.at("p").second, e.what());
        }
    }();

    ExperimentConfig config{params, kind, std::nullopt, "", {}, 0, 0, ""};
    if (kind == ModelKind::continuous) {
        config.spec = spec_from_keys(kv, name, line_no);
    } else {
        for (const char* key : {"family", "lambda", "sigma", "mu", "T"}) {
            reject_key(kv, key, name, "is only valid for model=continuous");
        }
    }

    config.estimator = require_key(kv, "estimator", name, line_no).first;
    if (config.estimator != "ml" && config.estimator != "absence") {
        fail(name, kv.at("estimator").second,
             "estimator must be ml or absence, got '" + config.estimator + "'");
    }

    const auto& grid = require_key(kv, "n_grid", name, line_no);
    long long prev = 0;
    for (const auto& tok : split(grid.first, ',')) {
        long long n = parse_int(trim(tok), name, grid.second);
        if (n <= prev) fail(name, grid.second, "n_grid must be strictly increasing and positive");
        config.n_grid.push_back(n);
        prev = n;
    }

    const auto& trials = require_key(kv, "trials", name, line_no);
    config.trials = static_cast<int>(parse_int(trials.first, name, trials.second));
    if (config.trials < 1) fail(name, trials.second, "trials must be >= 1");

    config.master_seed =
        parse_u64(require_key(kv, "seed", name, line_no).first, name, kv.at("seed").second);
    if (auto it = kv.find("out"); it != kv.end()) config.out = it->second.first;
    return config;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
    return parse_config_stream(is, path);
}

std::string results_csv(const ExperimentResult& result) {
    std::ostringstream os;
    os << "n,trials,failures,failure_rate,wilson95,n_star,n_floor\n";
    for (const auto& row : result.rows) {
        os << row.n << ',' << row.trials << ',' << row.failures << ','
           << format_g15(row.failure_rate) << ',' << format_g15(row.wilson95) << ','
           << format_g15(row.n_star) << ',' << row.n_floor << '\n';
    }
    return os.str();
}

std::string provenance_text(const ExperimentResult& result) {
    const ExperimentConfig& c = result.config;
    std::ostringstream os;
    os << "# diffnet " << kVersion << " experiment provenance\n";
    os << "model = " << to_string(c.kind) << '\n';
    os << "p = " << c.params.p() << '\n';
    os << "k = " << c.params.k() << '\n';
    os << "theta0 = " << format_exact(c.params.theta0()) << '\n';
    if (c.spec) {
        os << "family = " << to_string(c.spec->family) << '\n';
        switch (c.spec->family) {
            case Family::exponential:
                os << "lambda = " << format_exact(c.spec->lambda) << '\n';
                break;
            case Family::rayleigh:
                os << "sigma = " << format_exact(c.spec->sigma) << '\n';
                break;
            case Family::weibull:
                os << "mu = " << format_exact(c.spec->shape) << '\n';
                os << "sigma = " << format_exact(c.spec->sigma) << '\n';
                break;
        }
        os << "T = " << format_exact(c.spec->horizon) << '\n';
    }
    os << "estimator = " << c.estimator << '\n';
    os << "n_grid = ";
    for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
        if (i > 0) os << ',';
        os << c.n_grid[i];
    }
    os << '\n';
    os << "trials = " << c.trials << '\n';
    os << "seed = " << c.master_seed << '\n';
    if (!c.out.empty()) os << "out = " << c.out << '\n';
    os << "n_star = " << format_g15(result.threshold.n_star) << '\n';
    os << "n_floor = " << result.threshold.n_floor << '\n';
    return os.str();
}

void write_results(const std::string& path, const ExperimentResult& result) {
    {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
        os << results_csv(result);
        if (!os) throw std::runtime_error("write to '" + path + "' failed");
    }
    const std::string side = path + ".provenance";
    std::ofstream os(side, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + side + "' for writing");
    os << provenance_text(result);
    if (!os) throw std::runtime_error("write to '" + side + "' failed");
}

std::string kl_csv_header() { return "pA,pB,overlap,exact_kl,bound"; }

std::string kl_csv_row(const KlReport& report) {
    std::ostringstream os;
    os << to_string(report.a) << ',' << to_string(report.b) << ',' << report.overlap << ','
       << (std::isnan(report.exact_kl) ? std::string() : format_g15(report.exact_kl)) << ','
       << format_g15(report.bound);
    return os.str();
}

std::string threshold_csv_header() {
    return "p,k,theta0,model,kappa_ratio,numerator,denominator,n_star,n_floor,vacuous";
}

std::string threshold_csv_row(const ThresholdReport& report) {
    std::ostringstream os;
    os << report.p << ',' << report.k << ',' << format_g15(report.theta0) << ','
       << to_string(report.kind) << ','
       << (std::isnan(report.kappa_ratio) ? std::string() : format_g15(report.kappa_ratio))
       << ',' << format_g15(report.numerator) << ',' << format_g15(report.denominator) << ','
       << format_g15(report.n_star) << ',' << report.n_floor << ','
       << (report.vacuous ? 1 : 0);
    return os.str();
}

Hypothesis parse_hypothesis(const std::string& text) {
    Hypothesis hyp;
    std::string norm = text;
    for (char& c : norm) {
        if (c == '|') c = ',';
    }
    for (const auto& tok : split(norm, ',')) {
        std::string t = trim(tok);
        if (t.empty()) throw std::invalid_argument("empty index in hypothesis '" + text + "'");
        int v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size()) {
            throw std::invalid_argument("bad index '" + t + "' in hypothesis");
        }
        hyp.parents.push_back(v);
    }
    return hyp;
}

}  // namespace diffnet
