#pragma once

#include "curve.hpp"

#include <functional>

namespace sio {

/// One integration node: arc-length position and arc-measure weight.
struct QuadratureNode {
    double s = 0.0;
    double weight = 0.0;
};

/// A contiguous run of nodes from one geometric-refinement level; depth
/// increases toward the singular point. `tail` identifies which singular
/// side the run belongs to.
struct RefinedCell {
    std::size_t first = 0;
    std::size_t count = 0;
    int depth = 0;
    int tail = -1;
};

struct NodeSet {
    std::vector<QuadratureNode> nodes;
    std::vector<RefinedCell> cells;
    int tail_count = 0;
};

/// Integration nodes over a union of arc intervals on a curve of the given
/// length. Composite 4-point Gauss-Legendre cells; intervals are cut at
/// `split_points` (discontinuities) and refined geometrically (48 halvings,
/// two cells per level) toward every `singular_points` entry touching the
/// domain. Nodes never land on a singular point. `base_nodes` sets the
/// density of the unrefined part.
NodeSet build_node_set(const PortionDecomposition& domain, double curve_length,
                       std::vector<double> split_points, std::vector<double> singular_points,
                       int base_nodes = 4096);

struct TailDiagnosis {
    bool divergent = false;
    double slope = 0.0; // log2 of per-level sums vs depth
    int levels_used = 0;
};

/// Decides from per-node contributions |f(s_k)| * w_k whether the integral
/// fails to converge at the given tail: the fitted slope of log2(level sum)
/// against depth must fall below -0.01 for convergence.
TailDiagnosis diagnose_tail(const NodeSet& nodes, const std::vector<double>& abs_contrib,
                            int tail);

double integrate(const NodeSet& nodes, const std::function<double(double)>& f);
Complex integrate_complex(const NodeSet& nodes, const std::function<Complex(double)>& f);

} // namespace sio
