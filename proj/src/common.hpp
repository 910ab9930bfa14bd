#pragma once

#include <complex>
#include <cstdint>
#include <cstdio>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sio {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Invalid or inconsistent configuration supplied by the caller.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error(message) {}
};

/// A computation could not be carried out or failed an internal invariant.
class ComputeError : public Error {
public:
    explicit ComputeError(const std::string& message) : Error(message) {}
};

/// Format a double with 12 significant digits (shortest form via %g).
inline std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

/// Round a double to its 12-significant-digit decimal representation.
inline double canonical_round(double v) {
    if (!std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

/// FNV-1a 64-bit hash of a byte string.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

/// n logarithmically spaced values covering [lo, hi] inclusive (lo, hi > 0).
inline std::vector<double> log_space(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ConfigError("log_space: invalid range");
    std::vector<double> out(static_cast<std::size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

/// n uniformly spaced values covering [lo, hi] inclusive.
inline std::vector<double> lin_space(double lo, double hi, int n) {
    if (n < 2) throw ConfigError("lin_space: need at least two points");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    out.back() = hi;
    return out;
}

/// Least-squares line y = slope*x + intercept with the slope's standard error.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    int n = 0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("fit_line: need matched samples");
    LineFit fit;
    fit.n = static_cast<int>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= fit.n;
    my /= fit.n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw ConfigError("fit_line: degenerate abscissae");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (fit.n > 2) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - fit.slope * x[i] - fit.intercept;
            ssr += r * r;
        }
        fit.slope_stderr = std::sqrt(ssr / (fit.n - 2) / sxx);
    }
    return fit;
}

/// Reduce an angle to the principal interval (-pi, pi].
inline double principal_angle(double a) {
    a = std::remainder(a, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    return a;
}

/// Positive remainder of x modulo m, in [0, m).
inline double positive_mod(double x, double m) {
    double r = std::fmod(x, m);
    if (r < 0.0) r += m;
    if (r >= m) r = 0.0;
    return r;
}

} // namespace sio
