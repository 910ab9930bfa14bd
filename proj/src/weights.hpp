#pragma once

#include "curve.hpp"
#include "nakano.hpp"
#include "quadrature.hpp"

#include <functional>
#include <limits>
#include <memory>

namespace sio {

/// One multiplicative factor of a weight, anchored at a curve point t:
/// |tau - t|^radial * eta_t(tau)^winding, with eta_t = exp(-arg(tau - t))
/// taken along a continuous branch.
struct WeightAtom {
    double anchor_s = 0.0;
    double radial = 0.0;
    double winding = 0.0;
};

/// A weight on the curve: a product of anchored atoms times an optional
/// positive callable factor. Cheap to copy.
class Weight {
public:
    explicit Weight(Curve curve);

    static Weight unit(Curve curve);

    /// Khvedelidze atom |tau - t|^lambda.
    Weight& add_power(double anchor_s, double lambda);

    /// Spiral atom eta_t^x.
    Weight& add_spiral(double anchor_s, double x);

    /// |(tau - t)^gamma| = |tau - t|^{Re gamma} * eta_t(tau)^{Im gamma}.
    Weight& add_complex_power(double anchor_s, Complex gamma);

    /// Extra factor exp(log_factor(s)); must be finite at quadrature nodes.
    Weight& multiply_callable(std::function<double(double)> log_factor);

    double log_eval(double s) const;
    double eval(double s) const;

    /// Reciprocal-weight evaluator (for the conjugate-space norm).
    std::function<double(double)> as_function() const;
    std::function<double(double)> reciprocal_function() const;

    /// Anchors of atoms with any nonzero exponent: quadrature refines there.
    std::vector<double> singular_points() const;

    const std::vector<WeightAtom>& atoms() const { return atoms_; }
    const Curve& curve() const { return curve_; }
    bool has_callable() const { return static_cast<bool>(extra_log_); }

    /// True when every atom is a pure power atom and no callable is present.
    bool khvedelidze_only() const;

    /// Power exponent at a point: lambda_k when t matches an anchor within
    /// 1e-12 in arc length, otherwise 0. Requires khvedelidze_only().
    double lambda_at(double t_s) const;

private:
    Curve curve_;
    std::vector<WeightAtom> atoms_;
    std::vector<std::shared_ptr<const ArgBranch>> branches_; // parallel to atoms_, null if unused
    std::function<double(double)> extra_log_;
};

// ---------------------------------------------------------------------------
// Muckenhoupt-type quantities

struct BQuantity {
    double value = 0.0;
    bool divergent = false;
    double norm_weighted = 0.0;  // ||w chi_{Gamma(t,R)}||_X
    double norm_reciprocal = 0.0; // ||chi_{Gamma(t,R)} / w||_{X'}
};

/// B_{t,R}(w) = (1/R) ||w chi_{Gamma(t,R)}||_X * ||chi_{Gamma(t,R)}/w||_{X'}.
BQuantity b_quantity(const PortionScanner& scanner, const Weight& w, const Exponent& p, double R,
                     int base_nodes = 4096);

enum class ScanVerdict { Bounded, Diverging, Inconclusive };

const char* to_string(ScanVerdict v);

struct PointScan {
    double anchor_s = 0.0;
    double sup_b = 0.0;
    double small_r_slope = 0.0;   // d log B / d log R near R -> 0
    double slope_stderr = 0.0;
    bool divergent_norm = false;
    ScanVerdict verdict = ScanVerdict::Inconclusive;
    std::vector<double> radii, values;
};

struct MuckenhouptReport {
    ScanVerdict verdict = ScanVerdict::Inconclusive;
    double sup_b = 0.0;
    std::vector<PointScan> points;
};

/// Grid estimate of sup_t sup_R B_{t,R}(w) with a small-radius growth
/// heuristic: fitted log-log slope below -0.05 (B growing toward R = 0)
/// or an infinite norm flags divergence.
MuckenhouptReport muckenhoupt_scan(const Curve& curve, const Weight& w, const Exponent& p,
                                   const std::vector<double>& t_grid, int radius_count = 40,
                                   double radius_floor = 1e-5, int base_nodes = 4096,
                                   int threads = 0);

// ---------------------------------------------------------------------------
// Mean oscillation

/// Portion average (1/|Gamma(t,R)|) Int_{Gamma(t,R)} f |dtau|.
double portion_mean(const PortionScanner& scanner, const std::function<double(double)>& f,
                    double R, const std::vector<double>& split_points,
                    const std::vector<double>& singular_points, int base_nodes = 4096);

struct OscillationReport {
    std::vector<double> radii;
    std::vector<double> omega;      // portion means of f
    std::vector<double> deviation;  // portion means of |f - omega|
    double m_delta = 0.0;           // sup of deviation over radii < delta
    double bmo_norm_at_t = 0.0;     // sup over all radii
};

/// Mean oscillation of f around the scanner's anchor over a log radius grid.
OscillationReport mean_oscillation(const PortionScanner& scanner,
                                   const std::function<double(double)>& f,
                                   const std::vector<double>& split_points,
                                   const std::vector<double>& singular_points,
                                   double delta = std::numeric_limits<double>::infinity(),
                                   int radius_count = 40, double radius_floor = 1e-5,
                                   int base_nodes = 4096);

// ---------------------------------------------------------------------------
// Oscillation bound through the norm product

struct BmoBoundReport {
    std::vector<double> radii;
    std::vector<double> c_values;       // exp(-mean log w) * ||w chi|| ||chi||' / |Gamma|
    std::vector<double> cprime_values;  // exp(+mean log w) * ||chi|| ||chi/w||' / |Gamma|
    double sup_c = 0.0, sup_cprime = 0.0;
    double bmo_log_w = 0.0; // measured ||log w||_{*,t}
    double bound = 0.0;     // log(sup_c + sup_cprime)
    bool lower_bounds_hold = false; // all C, C' >= 1 - 1e-6
    bool oscillation_bound_holds = false;
};

/// Checks 1 <= C, 1 <= C' and ||log w||_{*,t} <= log(sup C + sup C') on a
/// radius grid. Throws ComputeError when a norm diverges.
BmoBoundReport bmo_bound_check(const PortionScanner& scanner, const Weight& w, const Exponent& p,
                               int radius_count = 40, double radius_floor = 1e-5,
                               int base_nodes = 4096);

} // namespace sio
