#pragma once
// Test-side oracles, independent of the library internals: Simpson and
// Gauss-Legendre quadrature, a Kolmogorov-Smirnov statistic, and temp-file
// helpers.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

// Composite Simpson on [a,b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    long double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return static_cast<double>(acc * h / 3.0L);
}

struct GaussNodes {
    std::vector<double> x;  // on [0,1]
    std::vector<double> w;
};

// 48-point Gauss-Legendre rule mapped onto [0,1], built by Newton iteration.
inline const GaussNodes& gauss01() {
    static const GaussNodes nodes = [] {
        constexpr int n = 48;
        GaussNodes g;
        g.x.resize(n);
        g.w.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double p0 = 1.0, p1 = x, dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                p0 = 1.0;
                p1 = x;
                for (int j = 2; j <= n; ++j) {
                    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            p0 = 1.0;
            p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            g.x[i] = 0.5 * (x + 1.0);
            g.w[i] = 1.0 / ((1.0 - x * x) * dp * dp);
        }
        return g;
    }();
    return nodes;
}

// Two-sided KS statistic of samples against a cdf.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double c = cdf(samples[i]);
        d = std::max(d, std::abs(c - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - c));
    }
    return d;
}

// Asymptotic two-sided KS critical value at level alpha: sqrt(ln(2/alpha)/2n).
inline double ks_critical(double alpha, std::size_t n) {
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        path_ = base / ("diffnet_test_" + std::to_string(rd()) + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    os << text;
}

}  // namespace testsupport
