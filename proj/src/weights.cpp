#include "weights.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>

namespace sio {

// ---------------------------------------------------------------------------
// Weight

Weight::Weight(Curve curve) : curve_(std::move(curve)) {}

Weight Weight::unit(Curve curve) { return Weight(std::move(curve)); }

Weight& Weight::add_power(double anchor_s, double lambda) {
    atoms_.push_back({positive_mod(anchor_s, curve_.length()), lambda, 0.0});
    branches_.push_back(nullptr);
    return *this;
}

Weight& Weight::add_spiral(double anchor_s, double x) {
    const double s = positive_mod(anchor_s, curve_.length());
    atoms_.push_back({s, 0.0, x});
    branches_.push_back(std::make_shared<const ArgBranch>(curve_, s));
    return *this;
}

Weight& Weight::add_complex_power(double anchor_s, Complex gamma) {
    const double s = positive_mod(anchor_s, curve_.length());
    atoms_.push_back({s, gamma.real(), gamma.imag()});
    branches_.push_back(gamma.imag() != 0.0 ? std::make_shared<const ArgBranch>(curve_, s)
                                            : nullptr);
    return *this;
}

Weight& Weight::multiply_callable(std::function<double(double)> log_factor) {
    if (extra_log_) {
        auto prev = extra_log_;
        extra_log_ = [prev, log_factor](double s) { return prev(s) + log_factor(s); };
    } else {
        extra_log_ = std::move(log_factor);
    }
    return *this;
}

double Weight::log_eval(double s) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
        const WeightAtom& atom = atoms_[k];
        if (atom.radial != 0.0) {
            const double r = std::abs(curve_.point_at(s) - curve_.point_at(atom.anchor_s));
            acc += atom.radial * std::log(r);
        }
        if (atom.winding != 0.0) acc -= atom.winding * branches_[k]->eval(s);
    }
    if (extra_log_) acc += extra_log_(s);
    return acc;
}

double Weight::eval(double s) const { return std::exp(log_eval(s)); }

std::function<double(double)> Weight::as_function() const {
    Weight copy = *this;
    return [copy](double s) { return copy.eval(s); };
}

std::function<double(double)> Weight::reciprocal_function() const {
    Weight copy = *this;
    return [copy](double s) { return std::exp(-copy.log_eval(s)); };
}

std::vector<double> Weight::singular_points() const {
    std::vector<double> out;
    for (const WeightAtom& atom : atoms_)
        if (atom.radial != 0.0 || atom.winding != 0.0) out.push_back(atom.anchor_s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Weight::khvedelidze_only() const {
    if (extra_log_) return false;
    for (const WeightAtom& atom : atoms_)
        if (atom.winding != 0.0) return false;
    return true;
}

double Weight::lambda_at(double t_s) const {
    if (!khvedelidze_only())
        throw ConfigError("lambda_at: weight is not a pure product of power atoms");
    const double L = curve_.length();
    const double t = positive_mod(t_s, L);
    double acc = 0.0;
    for (const WeightAtom& atom : atoms_) {
        const double gap = std::abs(atom.anchor_s - t);
        if (std::min(gap, L - gap) <= 1e-12) acc += atom.radial;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// B quantity and scan

BQuantity b_quantity(const PortionScanner& scanner, const Weight& w, const Exponent& p, double R,
                     int base_nodes) {
    if (!(R > 0.0)) throw ConfigError("b_quantity: radius must be positive");
    const Curve& curve = scanner.curve();
    const NodeSet nodes = build_node_set(scanner.portion(R), curve.length(), p.split_points(),
                                         w.singular_points(), base_nodes);
    const NormStatus nw = luxemburg_norm_checked(nodes, w.as_function(), p);
    const NormStatus nr = luxemburg_norm_checked(nodes, w.reciprocal_function(), p.conjugate());
    BQuantity out;
    out.norm_weighted = nw.value;
    out.norm_reciprocal = nr.value;
    out.divergent = nw.divergent || nr.divergent;
    out.value = out.divergent ? std::numeric_limits<double>::infinity()
                              : nw.value * nr.value / R;
    return out;
}

const char* to_string(ScanVerdict v) {
    switch (v) {
    case ScanVerdict::Bounded:
        return "bounded";
    case ScanVerdict::Diverging:
        return "diverging";
    case ScanVerdict::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

namespace {

/// Growth analysis of B over the smallest radii: fit log B vs log R over
/// `decades` decades above the floor; widen once if the fit is noisy.
void classify_point(PointScan& point) {
    if (point.divergent_norm) {
        point.verdict = ScanVerdict::Diverging;
        return;
    }
    const double r_floor = *std::min_element(point.radii.begin(), point.radii.end());
    for (double decades : {2.0, 3.0}) {
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < point.radii.size(); ++i) {
            if (point.radii[i] <= r_floor * std::pow(10.0, decades) && point.values[i] > 0.0) {
                lx.push_back(std::log(point.radii[i]));
                ly.push_back(std::log(point.values[i]));
            }
        }
        if (lx.size() < 4) continue;
        const LineFit fit = fit_line(lx, ly);
        point.small_r_slope = fit.slope;
        point.slope_stderr = fit.slope_stderr;
        if (fit.slope_stderr > 0.1) continue; // widen and refit
        point.verdict = (fit.slope < -0.05) ? ScanVerdict::Diverging : ScanVerdict::Bounded;
        return;
    }
    point.verdict = ScanVerdict::Inconclusive;
}

} // namespace

MuckenhouptReport muckenhoupt_scan(const Curve& curve, const Weight& w, const Exponent& p,
                                   const std::vector<double>& t_grid, int radius_count,
                                   double radius_floor, int base_nodes, int threads) {
    if (t_grid.empty() || radius_count < 4)
        throw ConfigError("muckenhoupt_scan: empty grids");
    MuckenhouptReport report;
    report.points.resize(t_grid.size());
    parallel_for(
        t_grid.size(),
        [&](std::size_t i) {
            PointScan& point = report.points[i];
            point.anchor_s = t_grid[i];
            PortionScanner scanner(curve, t_grid[i]);
            point.radii = log_space(radius_floor * scanner.max_distance(), scanner.max_distance(),
                                    radius_count);
            point.values.resize(point.radii.size());
            for (std::size_t j = 0; j < point.radii.size(); ++j) {
                const BQuantity b = b_quantity(scanner, w, p, point.radii[j], base_nodes);
                point.values[j] = b.value;
                point.divergent_norm |= b.divergent;
                if (!b.divergent) point.sup_b = std::max(point.sup_b, b.value);
            }
            classify_point(point);
        },
        threads);

    report.verdict = ScanVerdict::Bounded;
    for (const PointScan& point : report.points) {
        report.sup_b = std::max(report.sup_b, point.sup_b);
        if (point.verdict == ScanVerdict::Diverging) report.verdict = ScanVerdict::Diverging;
    }
    if (report.verdict != ScanVerdict::Diverging)
        for (const PointScan& point : report.points)
            if (point.verdict == ScanVerdict::Inconclusive)
                report.verdict = ScanVerdict::Inconclusive;
    return report;
}

// ---------------------------------------------------------------------------
// Mean oscillation

double portion_mean(const PortionScanner& scanner, const std::function<double(double)>& f,
                    double R, const std::vector<double>& split_points,
                    const std::vector<double>& singular_points, int base_nodes) {
    const PortionDecomposition& dom = scanner.portion(R);
    const NodeSet nodes =
        build_node_set(dom, scanner.curve().length(), split_points, singular_points, base_nodes);
    return integrate(nodes, f) / dom.measure;
}

OscillationReport mean_oscillation(const PortionScanner& scanner,
                                   const std::function<double(double)>& f,
                                   const std::vector<double>& split_points,
                                   const std::vector<double>& singular_points, double delta,
                                   int radius_count, double radius_floor, int base_nodes) {
    OscillationReport rep;
    rep.radii = log_space(radius_floor * scanner.max_distance(), scanner.max_distance(),
                          radius_count);
    rep.omega.resize(rep.radii.size());
    rep.deviation.resize(rep.radii.size());
    const double L = scanner.curve().length();
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        const double R = rep.radii[i];
        const PortionDecomposition& dom = scanner.portion(R);
        const NodeSet nodes = build_node_set(dom, L, split_points, singular_points, base_nodes);
        const double mean = integrate(nodes, f) / dom.measure;
        rep.omega[i] = mean;
        rep.deviation[i] =
            integrate(nodes, [&](double s) { return std::abs(f(s) - mean); }) / dom.measure;
        if (R < delta) rep.m_delta = std::max(rep.m_delta, rep.deviation[i]);
        rep.bmo_norm_at_t = std::max(rep.bmo_norm_at_t, rep.deviation[i]);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Oscillation bound through the norm product

BmoBoundReport bmo_bound_check(const PortionScanner& scanner, const Weight& w, const Exponent& p,
                               int radius_count, double radius_floor, int base_nodes) {
    BmoBoundReport rep;
    rep.radii = log_space(radius_floor * scanner.max_distance(), scanner.max_distance(),
                          radius_count);
    const double L = scanner.curve().length();
    const std::vector<double> splits = p.split_points();
    const std::vector<double> sing = w.singular_points();
    const Exponent q = p.conjugate();
    const auto wf = w.as_function();
    const auto wr = w.reciprocal_function();
    const auto wlog = [&w](double s) { return w.log_eval(s); };

    rep.c_values.resize(rep.radii.size());
    rep.cprime_values.resize(rep.radii.size());
    rep.lower_bounds_hold = true;
    double bmo = 0.0;
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        const double R = rep.radii[i];
        const PortionDecomposition& dom = scanner.portion(R);
        const NodeSet nodes = build_node_set(dom, L, splits, sing, base_nodes);
        const double mean_log = integrate(nodes, wlog) / dom.measure;

        const NormStatus nw = luxemburg_norm_checked(nodes, wf, p);
        const NormStatus nrec = luxemburg_norm_checked(nodes, wr, q);
        const NormStatus nchi_p = luxemburg_norm_checked(nodes, [](double) { return 1.0; }, p);
        const NormStatus nchi_q = luxemburg_norm_checked(nodes, [](double) { return 1.0; }, q);
        if (nw.divergent || nrec.divergent)
            throw ComputeError("bmo_bound_check: weight norm diverges on a portion");

        rep.c_values[i] = std::exp(-mean_log) * nw.value * nchi_q.value / dom.measure;
        rep.cprime_values[i] = std::exp(mean_log) * nchi_p.value * nrec.value / dom.measure;
        rep.sup_c = std::max(rep.sup_c, rep.c_values[i]);
        rep.sup_cprime = std::max(rep.sup_cprime, rep.cprime_values[i]);
        if (rep.c_values[i] < 1.0 - 1e-6 || rep.cprime_values[i] < 1.0 - 1e-6)
            rep.lower_bounds_hold = false;

        const double dev =
            integrate(nodes, [&](double s) { return std::abs(wlog(s) - mean_log); }) / dom.measure;
        bmo = std::max(bmo, dev);
    }
    rep.bmo_log_w = bmo;
    rep.bound = std::log(rep.sup_c + rep.sup_cprime);
    rep.oscillation_bound_holds = bmo <= rep.bound + 1e-6;
    return rep;
}

} // namespace sio
