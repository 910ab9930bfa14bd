#pragma once

#include "common.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace sio {

/// Closed arc-length interval [lo, hi] in the parameter domain [0, L].
struct ArcInterval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

/// A finite union of disjoint arc-length intervals together with its measure.
struct PortionDecomposition {
    std::vector<ArcInterval> intervals;
    double measure = 0.0;
    bool whole = false;
};

enum class CurveKind { UnitCircle, Ellipse, LogSpiralPatch, Polyline };

/// A closed rectifiable Jordan curve, parametrized by arc length and
/// traversed counter-clockwise. Cheap to copy (shared immutable state).
class Curve {
public:
    /// The circle |z| = 1, z(s) = exp(i s).
    static Curve unit_circle();

    /// Axis-aligned ellipse x = a cos u, y = b sin u (a, b > 0).
    static Curve ellipse(double semi_x, double semi_y);

    /// Closed curve with a logarithmic-spiral point at the origin: two arms
    /// r * exp(-i * twist * log r) and -r * exp(-i * twist * log r) for
    /// r in (0, extent], joined by a smooth outer cap of radius >= extent.
    /// The marked point (arc-length 0) is the spiral point itself, where
    /// arg(tau - t0) = -twist * log|tau - t0| + O(1).
    static Curve log_spiral_patch(double twist, double extent = 1.0);

    /// Closed polyline through the given vertices (at least 3, injective).
    static Curve from_points(std::vector<Complex> vertices);

    CurveKind kind() const;
    double length() const;

    /// Point at arc length s (s is taken modulo the curve length).
    Complex point_at(double s) const;

    /// Unit tangent dz/ds. Throws ComputeError at the spiral marked point.
    Complex tangent_at(double s) const;

    /// Twist parameter of a spiral patch; 0 for every other kind.
    double spiral_twist() const;

    /// Dense uniform parameter/point samples shared by the scan routines.
    const std::vector<double>& sample_params() const;
    const std::vector<Complex>& sample_points() const;

    /// Enclosed (signed) area is positive; negative input orders are reversed
    /// internally. True when the supplied orientation had to be flipped.
    bool orientation_flipped() const;

private:
    struct Impl;
    explicit Curve(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

/// Computes curve portions (neighborhoods) of a fixed anchor point:
/// portion(R) = {tau : |tau - t| < R} as a union of arc intervals,
/// annulus(R) = portion(R) \ portion(R/2). Caches per-radius results.
class PortionScanner {
public:
    PortionScanner(Curve curve, double anchor_s);

    const Curve& curve() const { return curve_; }
    double anchor_s() const { return anchor_s_; }
    Complex anchor_point() const { return anchor_; }

    /// d_t: the largest distance from the anchor to a curve point.
    double max_distance() const { return d_max_; }

    /// |point_at(s) - anchor|.
    double distance_at(double s) const;

    /// Decomposition of the portion of radius R. For R > d_t the whole
    /// curve is returned. Intervals are resolved to 1e-10 in arc length.
    const PortionDecomposition& portion(double radius) const;

    /// portion(R) \ portion(R/2); measure is the exact difference of the
    /// two portion measures. Requires 0 < R <= d_t (up to roundoff).
    PortionDecomposition annulus(double radius) const;

private:
    void scan_crossings(double radius, std::vector<double>& crossings) const;

    Curve curve_;
    double anchor_s_ = 0.0;
    Complex anchor_;
    double d_max_ = 0.0;
    std::vector<double> scan_s_;
    std::vector<double> scan_dist_;
    mutable std::map<double, PortionDecomposition> cache_;
};

/// Result of estimating the portion-growth constant sup |Gamma(t,R)| / R.
struct CarlesonEstimate {
    double value = 0.0;
    double anchor_s = 0.0;
    double radius = 0.0;
};

/// Portion-growth constant at one anchor over a log radius grid in
/// (radius_floor_factor * d_t, d_t].
double carleson_at(const PortionScanner& scanner, int radius_count = 40,
                   double radius_floor_factor = 1e-5);

/// Portion-growth constant over a grid of anchors.
CarlesonEstimate carleson_constant(const Curve& curve, const std::vector<double>& anchor_grid,
                                   int radius_count = 40, double radius_floor_factor = 1e-5);

/// A continuous branch of s -> arg(z(s) - t) on the arc punctured at the
/// anchor t = z(anchor_s), built from an adaptively refined table with
/// successive samples differing by less than pi.
class ArgBranch {
public:
    ArgBranch(Curve curve, double anchor_s);

    /// Branch value at arc length s (s != anchor_s modulo the length).
    double eval(double s) const;

    /// Branch value at offset u = s - anchor_s, u in (0, length).
    double eval_offset(double u) const;

    double anchor_s() const { return anchor_s_; }

    /// Offsets/values of the underlying table (for diagnostics).
    const std::vector<double>& table_offsets() const { return offsets_; }
    const std::vector<double>& table_values() const { return values_; }

private:
    Curve curve_;
    double anchor_s_ = 0.0;
    Complex anchor_;
    std::vector<double> offsets_;
    std::vector<double> values_;
};

/// Set difference outer \ inner for unions of disjoint sorted intervals.
std::vector<ArcInterval> subtract_intervals(const std::vector<ArcInterval>& outer,
                                            const std::vector<ArcInterval>& inner);

} // namespace sio
