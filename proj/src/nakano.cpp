#include "nakano.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sio {
namespace {
constexpr double kExpOverflow = 700.0;
constexpr double kNormRelTol = 1e-10;
} // namespace

// ---------------------------------------------------------------------------
// Exponent

Exponent Exponent::constant(double q) {
    if (!(q > 1.0) || !std::isfinite(q)) throw ConfigError("exponent: constant must be in (1,inf)");
    Exponent e;
    e.kind_ = Kind::Constant;
    e.base_ = q;
    return e;
}

Exponent Exponent::log_modulated(const Curve& curve, double base, double amplitude,
                                 double anchor_s) {
    if (!(base > 1.0)) throw ConfigError("exponent: base must exceed 1");
    if (!(amplitude > 0.0)) throw ConfigError("exponent: amplitude must be positive");
    Exponent e;
    e.kind_ = Kind::LogModulated;
    e.base_ = base;
    e.amplitude_ = amplitude;
    e.curve_ = curve;
    e.anchor_ = positive_mod(anchor_s, curve.length());
    e.anchor_point_ = curve.point_at(e.anchor_);
    return e;
}

Exponent Exponent::step(const Curve& curve, std::vector<double> breakpoints,
                        std::vector<double> values) {
    if (breakpoints.empty() || breakpoints.size() != values.size())
        throw ConfigError("exponent: table needs matching breakpoints and values");
    for (double v : values)
        if (!(v > 1.0) || !std::isfinite(v))
            throw ConfigError("exponent: table values must be in (1,inf)");
    const double L = curve.length();
    for (double& b : breakpoints) b = positive_mod(b, L);
    if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
        throw ConfigError("exponent: table breakpoints must be sorted");
    Exponent e;
    e.kind_ = Kind::Step;
    e.curve_ = curve;
    e.breaks_ = std::move(breakpoints);
    e.values_ = std::move(values);
    return e;
}

double Exponent::raw_eval(double s) const {
    switch (kind_) {
    case Kind::Constant:
        return base_;
    case Kind::LogModulated: {
        const double r = std::abs(curve_->point_at(s) - anchor_point_);
        if (r <= 0.0) return base_;
        const double cap = std::exp(-amplitude_);
        const double add = (r >= cap) ? 1.0 : amplitude_ / (-std::log(r));
        return base_ + add;
    }
    case Kind::Step: {
        const double u = positive_mod(s, curve_->length());
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), u);
        if (it == breaks_.begin()) return values_.back(); // wrap-around piece
        return values_[static_cast<std::size_t>(std::distance(breaks_.begin(), it)) - 1];
    }
    }
    throw ComputeError("exponent: unreachable");
}

double Exponent::raw_min() const {
    switch (kind_) {
    case Kind::Constant:
        return base_;
    case Kind::LogModulated:
        return base_; // attained in the limit toward the anchor
    case Kind::Step:
        return *std::min_element(values_.begin(), values_.end());
    }
    throw ComputeError("exponent: unreachable");
}

double Exponent::raw_max() const {
    switch (kind_) {
    case Kind::Constant:
        return base_;
    case Kind::LogModulated: {
        // Scan the curve for the largest anchor distance actually attained.
        double worst = base_;
        for (const Complex& z : curve_->sample_points())
            worst = std::max(worst, base_ + [&] {
                        const double r = std::abs(z - anchor_point_);
                        if (r <= 0.0) return 0.0;
                        return (r >= std::exp(-amplitude_)) ? 1.0 : amplitude_ / (-std::log(r));
                    }());
        return worst;
    }
    case Kind::Step:
        return *std::max_element(values_.begin(), values_.end());
    }
    throw ComputeError("exponent: unreachable");
}

double Exponent::eval(double s) const {
    const double raw = raw_eval(s);
    return conjugated_ ? raw / (raw - 1.0) : raw;
}

double Exponent::p_min() const {
    if (!conjugated_) return raw_min();
    const double m = raw_max();
    return m / (m - 1.0);
}

double Exponent::p_max() const {
    if (!conjugated_) return raw_max();
    const double m = raw_min();
    return m / (m - 1.0);
}

Exponent Exponent::conjugate() const {
    Exponent e = *this;
    e.conjugated_ = !conjugated_;
    return e;
}

std::optional<double> Exponent::class_constant() const {
    double raw_constant;
    switch (kind_) {
    case Kind::Constant:
        raw_constant = 0.0;
        break;
    case Kind::LogModulated:
        raw_constant = amplitude_;
        break;
    case Kind::Step:
        return std::nullopt;
    }
    if (!conjugated_) return raw_constant;
    const double pstar = raw_min();
    return raw_constant / ((pstar - 1.0) * (pstar - 1.0));
}

std::optional<double> Exponent::anchor_s() const {
    if (kind_ == Kind::LogModulated) return anchor_;
    return std::nullopt;
}

std::vector<double> Exponent::split_points() const {
    return kind_ == Kind::Step ? breaks_ : std::vector<double>{};
}

bool Exponent::is_constant() const { return kind_ == Kind::Constant; }

// ---------------------------------------------------------------------------
// Modular and norm

ModularProfile::ModularProfile(const NodeSet& nodes, const std::function<double(double)>& abs_f,
                               const Exponent& p) {
    const std::size_t n = nodes.nodes.size();
    std::vector<double> contrib(n, 0.0);
    terms_w_.reserve(n);
    terms_logf_.reserve(n);
    terms_p_.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fv = abs_f(nodes.nodes[k].s);
        if (fv == 0.0) continue;
        const double pv = p.eval(nodes.nodes[k].s);
        if (!std::isfinite(fv) || !std::isfinite(pv)) {
            divergent_ = true;
            contrib[k] = std::numeric_limits<double>::infinity();
            continue;
        }
        const double lf = std::log(fv);
        const double e = pv * lf;
        contrib[k] = (e > kExpOverflow) ? std::numeric_limits<double>::infinity()
                                        : nodes.nodes[k].weight * std::exp(e);
        terms_w_.push_back(nodes.nodes[k].weight);
        terms_logf_.push_back(lf);
        terms_p_.push_back(pv);
    }
    if (!divergent_) {
        for (int tail = 0; tail < nodes.tail_count && !divergent_; ++tail)
            divergent_ = diagnose_tail(nodes, contrib, tail).divergent;
    }
}

double ModularProfile::modular_scaled(double log_lambda) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < terms_w_.size(); ++k) {
        const double e = terms_p_[k] * (terms_logf_[k] - log_lambda);
        if (e > kExpOverflow) return std::numeric_limits<double>::infinity();
        acc += terms_w_[k] * std::exp(e);
    }
    return acc;
}

NormStatus ModularProfile::norm() const {
    if (divergent_) return {std::numeric_limits<double>::infinity(), true};
    if (terms_w_.empty()) return {0.0, false};

    const double ln2 = std::log(2.0);
    double t_hi = 0.0;
    int guard = 0;
    while (modular_scaled(t_hi) > 1.0) {
        t_hi += ln2;
        if (++guard > 6000) return {std::numeric_limits<double>::infinity(), true};
    }
    double t_lo = t_hi;
    guard = 0;
    while (modular_scaled(t_lo) <= 1.0) {
        t_lo -= ln2;
        if (++guard > 6000) {
            // modular stays <= 1 for arbitrarily small lambda: f is null.
            return {0.0, false};
        }
    }
    while (t_hi - t_lo > kNormRelTol) {
        const double mid = 0.5 * (t_lo + t_hi);
        (modular_scaled(mid) <= 1.0 ? t_hi : t_lo) = mid;
    }
    return {std::exp(t_hi), false};
}

double modular(const NodeSet& nodes, const std::function<double(double)>& abs_f,
               const Exponent& p) {
    const ModularProfile prof(nodes, abs_f, p);
    if (prof.divergent()) throw ComputeError("modular: non-integrable singularity detected");
    return prof.modular_scaled(0.0);
}

NormStatus luxemburg_norm_checked(const NodeSet& nodes,
                                  const std::function<double(double)>& abs_f,
                                  const Exponent& p) {
    return ModularProfile(nodes, abs_f, p).norm();
}

double luxemburg_norm(const NodeSet& nodes, const std::function<double(double)>& abs_f,
                      const Exponent& p) {
    const NormStatus st = luxemburg_norm_checked(nodes, abs_f, p);
    if (st.divergent) throw ComputeError("luxemburg_norm: function lies outside the space");
    return st.value;
}

// ---------------------------------------------------------------------------
// Local bounds and class verification

LocalNormBounds local_norm_bounds(const Exponent& p, double anchor_s, double log_class_constant,
                                  double max_anchor_distance, double local_carleson) {
    if (log_class_constant < 0.0)
        throw ConfigError("local_norm_bounds: class constant must be nonnegative");
    const double pt = p.eval(anchor_s);
    const double a = log_class_constant;
    const double log2 = std::log(2.0);
    LocalNormBounds out;
    out.c1 = std::min({0.5, std::exp(-a), max_anchor_distance});
    out.m1 = std::exp((a + log2) / ((1.0 - pt) * pt) - log2 / pt);
    out.c2 = std::min({0.5, 1.0 / local_carleson, std::exp(-a), max_anchor_distance});
    out.m2 = std::exp(a / (pt * pt) + std::log(local_carleson) / pt);
    return out;
}

ClassPReport verify_log_continuity(const Curve& curve, const Exponent& p, double anchor_s,
                                   double class_constant, int sample_count) {
    if (sample_count < 2) throw ConfigError("verify_log_continuity: need at least two samples");
    const double L = curve.length();
    const double t_s = positive_mod(anchor_s, L);
    const Complex t = curve.point_at(t_s);
    const double pt = p.eval(t_s);

    PortionScanner scanner(curve, t_s);
    const PortionDecomposition& half = scanner.portion(0.5);

    std::vector<double> samples;
    for (const ArcInterval& iv : half.intervals) {
        const int n = std::max(2, static_cast<int>(std::lround(
                                      sample_count * iv.length() / std::max(half.measure, 1e-30))));
        for (int i = 0; i < n; ++i)
            samples.push_back(iv.lo + iv.length() * (i + 0.5) / n);
    }
    for (int j = 2; j <= 40; ++j) {
        for (double sign : {-1.0, 1.0}) {
            const double s = positive_mod(t_s + sign * 0.5 * L * std::ldexp(1.0, -j), L);
            if (std::abs(curve.point_at(s) - t) < 0.5) samples.push_back(s);
        }
    }

    ClassPReport rep;
    rep.samples = static_cast<int>(samples.size());
    for (double s : samples) {
        const double r = std::abs(curve.point_at(s) - t);
        if (!(r > 0.0) || r >= 0.5) continue;
        const double lhs = std::abs(p.eval(s) - pt);
        const double rhs = class_constant / (-std::log(r));
        const double ratio = (rhs > 0.0) ? lhs / rhs
                                         : (lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_s = s;
        }
    }
    rep.ok = rep.worst_ratio <= 1.0 + 1e-9;
    return rep;
}

} // namespace sio
