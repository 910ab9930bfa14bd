#pragma once

#include "curve.hpp"
#include "quadrature.hpp"

#include <functional>
#include <optional>

namespace sio {

/// Variable exponent p(.) on a curve, with 1 < min p <= max p < infinity.
/// Kinds: constant, capped log-modulated around an anchor, and a piecewise
/// constant table over arc-length breakpoints. Conjugation is lazy.
class Exponent {
public:
    static Exponent constant(double q);

    /// p(tau) = base + min(1, amplitude / (-log|tau - t0|)) near the anchor
    /// t0 = z(anchor_s); the modulation saturates at 1 once
    /// |tau - t0| >= exp(-amplitude). Lies in the local log-continuity class
    /// at the anchor with constant `amplitude`.
    static Exponent log_modulated(const Curve& curve, double base, double amplitude,
                                  double anchor_s);

    /// Piecewise constant: value[i] on [breaks[i], breaks[i+1]) and
    /// value[last] on the wrap-around piece.
    static Exponent step(const Curve& curve, std::vector<double> breakpoints,
                         std::vector<double> values);

    double eval(double s) const;
    double p_min() const;
    double p_max() const;

    /// Pointwise conjugate p/(p-1); involutive.
    Exponent conjugate() const;

    /// Log-continuity constant at the natural anchor (0 for constants,
    /// the amplitude for the log-modulated family, absent for tables).
    std::optional<double> class_constant() const;

    /// Anchor arc-length of the log-modulated family, if any.
    std::optional<double> anchor_s() const;

    /// Discontinuity locations, to be used as quadrature split points.
    std::vector<double> split_points() const;

    bool is_constant() const;

private:
    enum class Kind { Constant, LogModulated, Step };
    Exponent() = default;
    double raw_eval(double s) const;
    double raw_min() const;
    double raw_max() const;

    Kind kind_ = Kind::Constant;
    bool conjugated_ = false;
    double base_ = 2.0;      // constant value or log-modulated base
    double amplitude_ = 0.0; // log-modulated amplitude
    double anchor_ = 0.0;
    std::optional<Curve> curve_;
    Complex anchor_point_;
    std::vector<double> breaks_, values_;
};

struct NormStatus {
    double value = 0.0;
    bool divergent = false;
};

/// Precomputed per-node data so the modular can be rescaled cheaply:
/// m(f/lambda, p) = sum_k w_k exp(p_k (log|f_k| - log lambda)).
/// Detects non-integrable singularities from the refined-tail decay.
class ModularProfile {
public:
    ModularProfile(const NodeSet& nodes, const std::function<double(double)>& abs_f,
                   const Exponent& p);

    bool divergent() const { return divergent_; }
    bool all_zero() const { return terms_w_.empty(); }

    /// m(f / exp(log_lambda), p); +infinity on overflow.
    double modular_scaled(double log_lambda) const;

    /// Luxemburg norm inf{lambda : m(f/lambda) <= 1} by log-bisection to
    /// relative tolerance 1e-10. Divergent profiles report +infinity.
    NormStatus norm() const;

private:
    std::vector<double> terms_w_, terms_logf_, terms_p_;
    bool divergent_ = false;
};

/// m(f, p) over the nodes; throws ComputeError when the refined tails reveal
/// a non-integrable singularity.
double modular(const NodeSet& nodes, const std::function<double(double)>& abs_f,
               const Exponent& p);

/// Luxemburg norm; throws ComputeError when f lies outside the space.
double luxemburg_norm(const NodeSet& nodes, const std::function<double(double)>& abs_f,
                      const Exponent& p);

/// Non-throwing variant reporting divergence as +infinity with a flag.
NormStatus luxemburg_norm_checked(const NodeSet& nodes,
                                  const std::function<double(double)>& abs_f,
                                  const Exponent& p);

/// Explicit local norm-of-characteristic bounds at an anchor:
/// lower  ||chi_{annulus(t,R)}|| >= M1 R^{1/p(t)} for R in (0, C1),
/// upper  ||chi_{portion(t,R)}|| <= M2 R^{1/p(t)} for R in (0, C2).
struct LocalNormBounds {
    double m1 = 0.0, c1 = 0.0, m2 = 0.0, c2 = 0.0;
};

LocalNormBounds local_norm_bounds(const Exponent& p, double anchor_s, double log_class_constant,
                                  double max_anchor_distance, double local_carleson);

struct ClassPReport {
    bool ok = false;
    double worst_ratio = 0.0;
    double worst_s = 0.0;
    int samples = 0;
};

/// Checks |p(tau) - p(t)| <= A_t / (-log|tau - t|) over sampled tau in the
/// portion of radius 1/2 around the anchor.
ClassPReport verify_log_continuity(const Curve& curve, const Exponent& p, double anchor_s,
                                   double class_constant, int sample_count);

} // namespace sio
