#include "quadrature.hpp"
#include "gauss_tables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace sio {
namespace {

constexpr int kRefineLevels = 48;
constexpr double kTouchTol = 1e-12;

// Deepest refinement level for a piece of width W: node offsets from the
// singular point must stay clear of the floating-point resolution of curve
// coordinates, otherwise evaluating |z(s) - t| collapses to zero.
int refine_depth(double width, double curve_length) {
    const double floor = curve_length * std::ldexp(1.0, -46);
    if (!(width > floor)) return 8;
    const int d = static_cast<int>(std::log2(width / floor));
    return std::clamp(d, 8, kRefineLevels);
}

double circular_gap(double a, double b, double period) {
    const double d = std::abs(positive_mod(a, period) - positive_mod(b, period));
    return std::min(d, period - d);
}

void emit_gauss_cells(std::vector<QuadratureNode>& nodes, double a, double b, int cells) {
    const GaussRule rule = gauss4();
    const double h = (b - a) / cells;
    for (int c = 0; c < cells; ++c) {
        const double lo = a + c * h;
        const double mid = lo + 0.5 * h, half = 0.5 * h;
        for (int i = 0; i < rule.size; ++i)
            nodes.push_back({mid + half * rule.nodes[i], half * rule.weights[i]});
    }
}

} // namespace

NodeSet build_node_set(const PortionDecomposition& domain, double curve_length,
                       std::vector<double> split_points, std::vector<double> singular_points,
                       int base_nodes) {
    if (base_nodes < 16) throw ConfigError("build_node_set: base_nodes too small");
    const double L = curve_length;
    for (double& p : split_points) p = positive_mod(p, L);
    for (double& p : singular_points) p = positive_mod(p, L);

    NodeSet out;
    const int base_cells = std::max(1, (base_nodes + 3) / 4);

    auto is_singular_end = [&](double s) {
        for (double p : singular_points)
            if (circular_gap(s, p, L) <= kTouchTol * std::max(L, 1.0)) return true;
        return false;
    };

    // One-sided geometric refinement toward the `a` end of [a, b].
    auto emit_refined_low = [&](double a, double b) {
        const double W = b - a;
        const int depth = refine_depth(W, L);
        const int tail = out.tail_count++;
        // Outermost half behaves like a smooth piece.
        {
            const double lo = a + 0.5 * W;
            const int cells = std::max(2, static_cast<int>(std::ceil(base_cells * (b - lo) / L)));
            const std::size_t first = out.nodes.size();
            emit_gauss_cells(out.nodes, lo, b, cells);
            out.cells.push_back({first, out.nodes.size() - first, 0, tail});
        }
        for (int j = 1; j < depth; ++j) {
            const double hi = a + W * std::ldexp(1.0, -j);
            const double lo = a + W * std::ldexp(1.0, -j - 1);
            const std::size_t first = out.nodes.size();
            emit_gauss_cells(out.nodes, lo, hi, 2);
            out.cells.push_back({first, out.nodes.size() - first, j, tail});
        }
        {
            const double hi = a + W * std::ldexp(1.0, -depth);
            const std::size_t first = out.nodes.size();
            emit_gauss_cells(out.nodes, a, hi, 2);
            out.cells.push_back({first, out.nodes.size() - first, depth, tail});
        }
    };

    auto emit_refined_high = [&](double a, double b) {
        const double W = b - a;
        const int depth = refine_depth(W, L);
        const int tail = out.tail_count++;
        {
            const double hi = b - 0.5 * W;
            const int cells = std::max(2, static_cast<int>(std::ceil(base_cells * (hi - a) / L)));
            const std::size_t first = out.nodes.size();
            emit_gauss_cells(out.nodes, a, hi, cells);
            out.cells.push_back({first, out.nodes.size() - first, 0, tail});
        }
        for (int j = 1; j < depth; ++j) {
            const double lo = b - W * std::ldexp(1.0, -j);
            const double hi = b - W * std::ldexp(1.0, -j - 1);
            const std::size_t first = out.nodes.size();
            emit_gauss_cells(out.nodes, lo, hi, 2);
            out.cells.push_back({first, out.nodes.size() - first, j, tail});
        }
        {
            const double lo = b - W * std::ldexp(1.0, -depth);
            const std::size_t first = out.nodes.size();
            emit_gauss_cells(out.nodes, lo, b, 2);
            out.cells.push_back({first, out.nodes.size() - first, depth, tail});
        }
    };

    for (const ArcInterval& iv : domain.intervals) {
        if (iv.length() <= 0.0) continue;
        // Cut at interior split and singular points.
        std::vector<double> cuts;
        for (double p : split_points)
            if (p > iv.lo + kTouchTol && p < iv.hi - kTouchTol) cuts.push_back(p);
        for (double p : singular_points) {
            if (p > iv.lo + kTouchTol && p < iv.hi - kTouchTol) cuts.push_back(p);
            // A wrapped domain may contain the point shifted by one period.
            const double q = p - L;
            if (q > iv.lo + kTouchTol && q < iv.hi - kTouchTol) cuts.push_back(q);
        }
        cuts.push_back(iv.lo);
        cuts.push_back(iv.hi);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [&](double x, double y) { return y - x < kTouchTol; }),
                   cuts.end());

        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double a = cuts[c], b = cuts[c + 1];
            if (b - a <= 0.0) continue;
            const bool lo_sing = is_singular_end(a);
            const bool hi_sing = is_singular_end(b);
            if (lo_sing && hi_sing) {
                const double mid = 0.5 * (a + b);
                emit_refined_low(a, mid);
                emit_refined_high(mid, b);
            } else if (lo_sing) {
                emit_refined_low(a, b);
            } else if (hi_sing) {
                emit_refined_high(a, b);
            } else {
                const int cells = std::max(2, static_cast<int>(std::ceil(base_cells * (b - a) / L)));
                emit_gauss_cells(out.nodes, a, b, cells);
            }
        }
    }
    return out;
}

TailDiagnosis diagnose_tail(const NodeSet& nodes, const std::vector<double>& abs_contrib,
                            int tail) {
    TailDiagnosis diag;
    std::map<int, double> level_sum;
    for (const RefinedCell& cell : nodes.cells) {
        if (cell.tail != tail) continue;
        double& acc = level_sum[cell.depth];
        for (std::size_t k = cell.first; k < cell.first + cell.count; ++k) {
            if (!std::isfinite(abs_contrib[k])) {
                diag.divergent = true;
                diag.slope = std::numeric_limits<double>::infinity();
                return diag;
            }
            acc += abs_contrib[k];
        }
    }
    if (level_sum.empty()) return diag;

    double peak = 0.0;
    for (const auto& [depth, sum] : level_sum) peak = std::max(peak, sum);
    if (peak <= 0.0) return diag;

    // Regression of log2(sum) vs depth over the deepest usable levels.
    std::vector<std::pair<int, double>> pts;
    for (const auto& [depth, sum] : level_sum)
        if (sum > peak * 1e-280) pts.push_back({depth, std::log2(sum)});
    std::sort(pts.begin(), pts.end());
    const int use = std::min<int>(16, static_cast<int>(pts.size()));
    if (use < 4) return diag;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = static_cast<int>(pts.size()) - use; i < static_cast<int>(pts.size()); ++i) {
        const double x = pts[static_cast<std::size_t>(i)].first;
        const double y = pts[static_cast<std::size_t>(i)].second;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = use * sxx - sx * sx;
    diag.levels_used = use;
    diag.slope = denom != 0.0 ? (use * sxy - sx * sy) / denom : 0.0;
    diag.divergent = diag.slope >= -0.01;
    return diag;
}

double integrate(const NodeSet& nodes, const std::function<double(double)>& f) {
    double acc = 0.0;
    for (const QuadratureNode& n : nodes.nodes) acc += n.weight * f(n.s);
    return acc;
}

Complex integrate_complex(const NodeSet& nodes, const std::function<Complex(double)>& f) {
    Complex acc{0.0, 0.0};
    for (const QuadratureNode& n : nodes.nodes) acc += n.weight * f(n.s);
    return acc;
}

} // namespace sio
