#include "curve.hpp"
#include "gauss_tables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace sio {
namespace {

constexpr int kDenseSamples = 8192;
constexpr double kArcBisectTol = 1e-10;
constexpr double kCapStrength = 4.0; // radial bulge exponent of the spiral cap

double gl8_integral(const std::function<double(double)>& f, double a, double b) {
    const GaussRule rule = gauss8();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < rule.size; ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

/// Cumulative arc length over a native parameter in [0, u_max], with a
/// Hermite-interpolated inverse on a uniform arc-length grid.
class ArcLengthMap {
public:
    ArcLengthMap(std::function<double(double)> speed, double u_max, int native_cells,
                 int inverse_cells)
        : speed_(std::move(speed)), u_max_(u_max) {
        u_grid_.resize(static_cast<std::size_t>(native_cells) + 1);
        s_cum_.resize(static_cast<std::size_t>(native_cells) + 1);
        for (int k = 0; k <= native_cells; ++k)
            u_grid_[static_cast<std::size_t>(k)] = u_max_ * k / native_cells;
        s_cum_[0] = 0.0;
        for (int k = 0; k < native_cells; ++k)
            s_cum_[static_cast<std::size_t>(k) + 1] =
                s_cum_[static_cast<std::size_t>(k)] +
                gl8_integral(speed_, u_grid_[static_cast<std::size_t>(k)],
                             u_grid_[static_cast<std::size_t>(k) + 1]);
        total_ = s_cum_.back();
        inv_h_ = total_ / inverse_cells;
        inv_u_.resize(static_cast<std::size_t>(inverse_cells) + 1);
        inv_d_.resize(static_cast<std::size_t>(inverse_cells) + 1);
        inv_u_[0] = 0.0;
        inv_u_[static_cast<std::size_t>(inverse_cells)] = u_max_;
        for (int j = 1; j < inverse_cells; ++j)
            inv_u_[static_cast<std::size_t>(j)] = solve(total_ * j / inverse_cells);
        for (int j = 0; j <= inverse_cells; ++j)
            inv_d_[static_cast<std::size_t>(j)] = 1.0 / speed_(inv_u_[static_cast<std::size_t>(j)]);
    }

    double length() const { return total_; }

    double invert(double s) const {
        if (s <= 0.0) return 0.0;
        if (s >= total_) return u_max_;
        const int cells = static_cast<int>(inv_u_.size()) - 1;
        const int j = std::min(static_cast<int>(s / inv_h_), cells - 1);
        const std::size_t k = static_cast<std::size_t>(j);
        const double t = (s - j * inv_h_) / inv_h_;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * inv_u_[k] + h10 * inv_h_ * inv_d_[k] + h01 * inv_u_[k + 1] +
               h11 * inv_h_ * inv_d_[k + 1];
    }

private:
    double solve(double target) const {
        auto it = std::upper_bound(s_cum_.begin(), s_cum_.end(), target);
        int k = static_cast<int>(std::distance(s_cum_.begin(), it)) - 1;
        k = std::clamp(k, 0, static_cast<int>(s_cum_.size()) - 2);
        const std::size_t ks = static_cast<std::size_t>(k);
        double lo = u_grid_[ks], hi = u_grid_[ks + 1];
        for (int iter = 0; iter < 60; ++iter) {
            const double mid = 0.5 * (lo + hi);
            const double val = s_cum_[ks] + gl8_integral(speed_, u_grid_[ks], mid);
            (val < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    std::function<double(double)> speed_;
    double u_max_ = 0.0, total_ = 0.0, inv_h_ = 0.0;
    std::vector<double> u_grid_, s_cum_, inv_u_, inv_d_;
};

double cap_profile(double v) { return v * v * (3.0 - 2.0 * v); }
double cap_profile_deriv(double v) { return 6.0 * v * (1.0 - v); }

} // namespace

struct Curve::Impl {
    CurveKind kind = CurveKind::UnitCircle;
    bool reversed = false;
    double len = 0.0;

    // ellipse
    double semi_x = 1.0, semi_y = 1.0;
    std::unique_ptr<ArcLengthMap> map; // ellipse angle map or spiral cap map

    // spiral patch
    double twist = 0.0, rmax = 1.0, clen = 1.0;
    double arm_len = 0.0, cap_len = 0.0, theta_a = 0.0;

    // polyline
    std::vector<Complex> verts;
    std::vector<double> cumlen;

    std::vector<double> samples_s;
    std::vector<Complex> samples_z;

    Complex cap_sigma(double v) const {
        return Complex(std::log(rmax), theta_a) + kI * kPi * cap_profile(v) +
               kCapStrength * Complex(1.0, -twist) * v * (1.0 - v);
    }

    Complex cap_sigma_deriv(double v) const {
        return kI * kPi * cap_profile_deriv(v) +
               kCapStrength * Complex(1.0, -twist) * (1.0 - 2.0 * v);
    }

    Complex raw_point(double s) const {
        switch (kind) {
        case CurveKind::UnitCircle:
            return std::exp(kI * s);
        case CurveKind::Ellipse: {
            const double u = map->invert(s);
            return {semi_x * std::cos(u), semi_y * std::sin(u)};
        }
        case CurveKind::LogSpiralPatch: {
            if (s <= 0.0) return {0.0, 0.0};
            if (s < arm_len) {
                const double r = s / clen;
                return std::polar(r, -twist * std::log(r));
            }
            if (s <= arm_len + cap_len) {
                const double v = map->invert(s - arm_len);
                return std::exp(cap_sigma(v));
            }
            const double back = len - s;
            if (back <= 0.0) return {0.0, 0.0};
            const double r = back / clen;
            return -std::polar(r, -twist * std::log(r));
        }
        case CurveKind::Polyline: {
            auto it = std::upper_bound(cumlen.begin(), cumlen.end(), s);
            int k = static_cast<int>(std::distance(cumlen.begin(), it)) - 1;
            k = std::clamp(k, 0, static_cast<int>(verts.size()) - 1);
            const std::size_t ks = static_cast<std::size_t>(k);
            const Complex a = verts[ks];
            const Complex b = verts[(ks + 1) % verts.size()];
            const double seg = cumlen[ks + 1] - cumlen[ks];
            const double t = seg > 0.0 ? (s - cumlen[ks]) / seg : 0.0;
            return a + (b - a) * t;
        }
        }
        throw ComputeError("raw_point: unreachable");
    }

    Complex raw_tangent(double s) const {
        switch (kind) {
        case CurveKind::UnitCircle:
            return kI * std::exp(kI * s);
        case CurveKind::Ellipse: {
            const double u = map->invert(s);
            const Complex d{-semi_x * std::sin(u), semi_y * std::cos(u)};
            return d / std::abs(d);
        }
        case CurveKind::LogSpiralPatch: {
            if (s <= 0.0 || s >= len)
                throw ComputeError("tangent undefined at the spiral marked point");
            if (s < arm_len) {
                const double r = s / clen;
                return Complex(1.0, -twist) * std::polar(1.0, -twist * std::log(r)) / clen;
            }
            if (s <= arm_len + cap_len) {
                const double v = map->invert(s - arm_len);
                const Complex d = cap_sigma_deriv(v) * std::exp(cap_sigma(v));
                return d / std::abs(d);
            }
            const double r = (len - s) / clen;
            return Complex(1.0, -twist) * std::polar(1.0, -twist * std::log(r)) / clen;
        }
        case CurveKind::Polyline: {
            auto it = std::upper_bound(cumlen.begin(), cumlen.end(), s);
            int k = static_cast<int>(std::distance(cumlen.begin(), it)) - 1;
            k = std::clamp(k, 0, static_cast<int>(verts.size()) - 1);
            const std::size_t ks = static_cast<std::size_t>(k);
            const Complex a = verts[ks];
            const Complex b = verts[(ks + 1) % verts.size()];
            return (b - a) / std::abs(b - a);
        }
        }
        throw ComputeError("raw_tangent: unreachable");
    }

    Complex point(double s) const {
        s = positive_mod(s, len);
        if (reversed && s > 0.0) s = len - s;
        return raw_point(s);
    }

    Complex tangent(double s) const {
        s = positive_mod(s, len);
        if (!reversed) return raw_tangent(s);
        return -raw_tangent(s > 0.0 ? len - s : 0.0);
    }

    void finalize() {
        // Normalize orientation so the enclosed signed area is positive.
        double area2 = 0.0;
        if (kind == CurveKind::Polyline) {
            for (std::size_t i = 0; i < verts.size(); ++i) {
                const Complex a = verts[i], b = verts[(i + 1) % verts.size()];
                area2 += a.real() * b.imag() - b.real() * a.imag();
            }
        } else if (kind != CurveKind::UnitCircle) {
            Complex prev = raw_point(0.0);
            const Complex first = prev;
            for (int i = 1; i <= kDenseSamples; ++i) {
                const Complex cur =
                    (i == kDenseSamples) ? first : raw_point(len * i / kDenseSamples);
                area2 += prev.real() * cur.imag() - cur.real() * prev.imag();
                prev = cur;
            }
        } else {
            area2 = 1.0;
        }
        reversed = area2 < 0.0;

        samples_s.resize(kDenseSamples);
        samples_z.resize(kDenseSamples);
        for (int i = 0; i < kDenseSamples; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            samples_s[k] = len * i / kDenseSamples;
            samples_z[k] = point(samples_s[k]);
        }
    }
};

Curve::Curve(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Curve Curve::unit_circle() {
    auto impl = std::make_shared<Impl>();
    impl->kind = CurveKind::UnitCircle;
    impl->len = kTwoPi;
    impl->finalize();
    return Curve(std::move(impl));
}

Curve Curve::ellipse(double semi_x, double semi_y) {
    if (!(semi_x > 0.0) || !(semi_y > 0.0))
        throw ConfigError("ellipse: semi-axes must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = CurveKind::Ellipse;
    impl->semi_x = semi_x;
    impl->semi_y = semi_y;
    const double a = semi_x, b = semi_y;
    impl->map = std::make_unique<ArcLengthMap>(
        [a, b](double u) {
            const double su = std::sin(u), cu = std::cos(u);
            return std::sqrt(a * a * su * su + b * b * cu * cu);
        },
        kTwoPi, 4096, 4096);
    impl->len = impl->map->length();
    impl->finalize();
    return Curve(std::move(impl));
}

Curve Curve::log_spiral_patch(double twist, double extent) {
    if (!(extent >= 0.1)) throw ConfigError("log_spiral_patch: extent must be at least 0.1");
    if (!(std::abs(twist) <= 30.0))
        throw ConfigError("log_spiral_patch: |twist| above 30 is not resolvable");
    auto impl = std::make_shared<Impl>();
    impl->kind = CurveKind::LogSpiralPatch;
    impl->twist = twist;
    impl->rmax = extent;
    impl->clen = std::sqrt(1.0 + twist * twist);
    impl->arm_len = impl->clen * extent;
    impl->theta_a = -twist * std::log(extent);
    const Impl* raw = impl.get();
    impl->map = std::make_unique<ArcLengthMap>(
        [raw](double v) {
            return std::abs(raw->cap_sigma_deriv(v)) * std::exp(raw->cap_sigma(v).real());
        },
        1.0, 2048, 2048);
    impl->cap_len = impl->map->length();
    impl->len = 2.0 * impl->arm_len + impl->cap_len;
    impl->finalize();
    return Curve(std::move(impl));
}

Curve Curve::from_points(std::vector<Complex> vertices) {
    if (vertices.size() < 3) throw ConfigError("from_points: need at least three vertices");
    double scale = 0.0;
    for (const Complex& v : vertices) scale = std::max(scale, std::abs(v));
    auto impl = std::make_shared<Impl>();
    impl->kind = CurveKind::Polyline;
    impl->verts = std::move(vertices);
    impl->cumlen.resize(impl->verts.size() + 1);
    impl->cumlen[0] = 0.0;
    for (std::size_t i = 0; i < impl->verts.size(); ++i) {
        const double seg = std::abs(impl->verts[(i + 1) % impl->verts.size()] - impl->verts[i]);
        if (seg <= 1e-12 * std::max(scale, 1.0))
            throw ConfigError("from_points: consecutive vertices coincide");
        impl->cumlen[i + 1] = impl->cumlen[i] + seg;
    }
    impl->len = impl->cumlen.back();
    impl->finalize();
    return Curve(std::move(impl));
}

CurveKind Curve::kind() const { return impl_->kind; }
double Curve::length() const { return impl_->len; }
Complex Curve::point_at(double s) const { return impl_->point(s); }
Complex Curve::tangent_at(double s) const { return impl_->tangent(s); }
double Curve::spiral_twist() const {
    return impl_->kind == CurveKind::LogSpiralPatch ? impl_->twist : 0.0;
}
const std::vector<double>& Curve::sample_params() const { return impl_->samples_s; }
const std::vector<Complex>& Curve::sample_points() const { return impl_->samples_z; }
bool Curve::orientation_flipped() const { return impl_->reversed; }

// ---------------------------------------------------------------------------
// PortionScanner

PortionScanner::PortionScanner(Curve curve, double anchor_s) : curve_(std::move(curve)) {
    const double L = curve_.length();
    anchor_s_ = positive_mod(anchor_s, L);
    anchor_ = curve_.point_at(anchor_s_);

    scan_s_ = curve_.sample_params();
    for (int j = 0; j <= 60; ++j) {
        const double base = 0.5 * L * std::ldexp(1.0, -j);
        for (double f : {1.0, 1.3, 1.6}) {
            scan_s_.push_back(positive_mod(anchor_s_ + base * f, L));
            scan_s_.push_back(positive_mod(anchor_s_ - base * f, L));
        }
    }
    std::sort(scan_s_.begin(), scan_s_.end());
    scan_s_.erase(std::unique(scan_s_.begin(), scan_s_.end(),
                              [L](double a, double b) { return b - a < L * 1e-16; }),
                  scan_s_.end());

    scan_dist_.resize(scan_s_.size());
    for (std::size_t i = 0; i < scan_s_.size(); ++i)
        scan_dist_[i] = std::abs(curve_.point_at(scan_s_[i]) - anchor_);

    // Largest distance: grid argmax refined by golden-section search.
    std::size_t best = 0;
    for (std::size_t i = 1; i < scan_s_.size(); ++i)
        if (scan_dist_[i] > scan_dist_[best]) best = i;
    const std::size_t n = scan_s_.size();
    double lo = scan_s_[(best + n - 1) % n], hi = scan_s_[(best + 1) % n];
    if (best == 0) lo -= L;
    if (best == n - 1) hi += L;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = distance_at(x1), f2 = distance_at(x2);
    for (int iter = 0; iter < 80; ++iter) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = distance_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = distance_at(x1);
        }
    }
    d_max_ = std::max(scan_dist_[best], std::max(f1, f2));
}

double PortionScanner::distance_at(double s) const {
    return std::abs(curve_.point_at(s) - anchor_);
}

void PortionScanner::scan_crossings(double radius, std::vector<double>& crossings) const {
    const double L = curve_.length();
    const std::size_t n = scan_s_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double f0 = scan_dist_[i] - radius;
        const double f1 = scan_dist_[(i + 1) % n] - radius;
        if (f0 == 0.0) {
            crossings.push_back(scan_s_[i]);
            continue;
        }
        if (f0 * f1 < 0.0) {
            double lo = scan_s_[i];
            double hi = (i + 1 < n) ? scan_s_[i + 1] : scan_s_[0] + L;
            double flo = f0;
            while (hi - lo > kArcBisectTol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = distance_at(positive_mod(mid, L)) - radius;
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            crossings.push_back(positive_mod(0.5 * (lo + hi), L));
        }
    }
    std::sort(crossings.begin(), crossings.end());
    crossings.erase(std::unique(crossings.begin(), crossings.end(),
                                [](double a, double b) { return b - a < 2e-10; }),
                    crossings.end());
}

const PortionDecomposition& PortionScanner::portion(double radius) const {
    if (!(radius > 0.0)) throw ConfigError("portion: radius must be positive");
    auto it = cache_.find(radius);
    if (it != cache_.end()) return it->second;

    const double L = curve_.length();
    PortionDecomposition out;
    std::vector<double> crossings;
    scan_crossings(radius, crossings);

    if (crossings.empty()) {
        // The anchor itself is always inside, so no crossing means everything is.
        out.intervals = {{0.0, L}};
        out.measure = L;
        out.whole = true;
        return cache_.emplace(radius, std::move(out)).first->second;
    }

    const std::size_t k = crossings.size();
    std::vector<ArcInterval> inside;
    for (std::size_t i = 0; i < k; ++i) {
        const double a = crossings[i];
        const double b = (i + 1 < k) ? crossings[i + 1] : crossings[0] + L;
        if (b - a < 1e-14 * L) continue;
        const double mid = positive_mod(0.5 * (a + b), L);
        if (distance_at(mid) < radius) inside.push_back({a, b});
    }
    // Merge regions that share a tangency crossing.
    std::vector<ArcInterval> merged;
    for (const ArcInterval& iv : inside) {
        if (!merged.empty() && iv.lo - merged.back().hi < 2e-10)
            merged.back().hi = iv.hi;
        else
            merged.push_back(iv);
    }
    for (const ArcInterval& iv : merged) {
        if (iv.hi <= L) {
            out.intervals.push_back(iv);
        } else {
            out.intervals.push_back({iv.lo, L});
            out.intervals.push_back({0.0, iv.hi - L});
        }
    }
    std::sort(out.intervals.begin(), out.intervals.end(),
              [](const ArcInterval& a, const ArcInterval& b) { return a.lo < b.lo; });
    for (const ArcInterval& iv : out.intervals) out.measure += iv.length();
    return cache_.emplace(radius, std::move(out)).first->second;
}

PortionDecomposition PortionScanner::annulus(double radius) const {
    if (!(radius > 0.0)) throw ConfigError("annulus: radius must be positive");
    if (radius > d_max_ * (1.0 + 1e-9))
        throw ConfigError("annulus: radius exceeds the largest anchor distance");
    const PortionDecomposition& outer = portion(radius);
    const PortionDecomposition& inner = portion(0.5 * radius);
    PortionDecomposition out;
    out.intervals = subtract_intervals(outer.intervals, inner.intervals);
    out.measure = std::max(0.0, outer.measure - inner.measure);
    return out;
}

std::vector<ArcInterval> subtract_intervals(const std::vector<ArcInterval>& outer,
                                            const std::vector<ArcInterval>& inner) {
    std::vector<ArcInterval> out;
    for (const ArcInterval& iv : outer) {
        double lo = iv.lo;
        for (const ArcInterval& cut : inner) {
            if (cut.hi <= lo) continue;
            if (cut.lo >= iv.hi) break;
            if (cut.lo > lo) out.push_back({lo, cut.lo});
            lo = std::max(lo, cut.hi);
            if (lo >= iv.hi) break;
        }
        if (lo < iv.hi) out.push_back({lo, iv.hi});
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const ArcInterval& iv) { return iv.length() <= 0.0; }),
              out.end());
    return out;
}

double carleson_at(const PortionScanner& scanner, int radius_count, double radius_floor_factor) {
    const double d = scanner.max_distance();
    const std::vector<double> grid = log_space(radius_floor_factor * d, d, radius_count);
    double best = 0.0;
    for (double r : grid) best = std::max(best, scanner.portion(r).measure / r);
    return best;
}

CarlesonEstimate carleson_constant(const Curve& curve, const std::vector<double>& anchor_grid,
                                   int radius_count, double radius_floor_factor) {
    CarlesonEstimate est;
    for (double t : anchor_grid) {
        PortionScanner scanner(curve, t);
        const double d = scanner.max_distance();
        const std::vector<double> grid = log_space(radius_floor_factor * d, d, radius_count);
        for (double r : grid) {
            const double val = scanner.portion(r).measure / r;
            if (val > est.value) {
                est.value = val;
                est.anchor_s = t;
                est.radius = r;
            }
        }
    }
    return est;
}

// ---------------------------------------------------------------------------
// ArgBranch

ArgBranch::ArgBranch(Curve curve, double anchor_s) : curve_(std::move(curve)) {
    const double L = curve_.length();
    anchor_s_ = positive_mod(anchor_s, L);
    anchor_ = curve_.point_at(anchor_s_);

    std::vector<double> cand;
    const int uniform_n = 4096;
    cand.reserve(static_cast<std::size_t>(uniform_n) + 900);
    for (int i = 1; i < uniform_n; ++i) cand.push_back(L * i / uniform_n);
    for (int j = 1; j <= 52; ++j) {
        const double base = 0.5 * L * std::ldexp(1.0, -j);
        for (int m = 0; m < 8; ++m) {
            const double u = base * (1.0 + m / 8.0);
            cand.push_back(u);
            cand.push_back(L - u);
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end(),
                           [L](double a, double b) { return b - a < L * 1e-17; }),
               cand.end());

    std::vector<double> dists;
    auto append = [&](double u, double theta, double dist) {
        offsets_.push_back(u);
        values_.push_back(theta);
        dists.push_back(dist);
    };

    {
        const Complex z = curve_.point_at(anchor_s_ + cand.front());
        append(cand.front(), std::arg(z - anchor_), std::abs(z - anchor_));
    }

    const std::function<void(double, int)> advance = [&](double u, int depth) {
        const Complex z = curve_.point_at(positive_mod(anchor_s_ + u, L));
        const double princ = std::arg(z - anchor_);
        const double step = principal_angle(princ - values_.back());
        if (std::abs(step) > 2.8) {
            if (depth >= 48) throw ComputeError("argument branch refinement exhausted");
            advance(0.5 * (offsets_.back() + u), depth + 1);
            advance(u, depth + 1);
            return;
        }
        append(u, values_.back() + step, std::abs(z - anchor_));
    };
    for (std::size_t i = 1; i < cand.size(); ++i) advance(cand[i], 0);

    // Pin the branch so the farthest point carries its principal argument.
    std::size_t far = 0;
    for (std::size_t i = 1; i < dists.size(); ++i)
        if (dists[i] > dists[far]) far = i;
    const double shift = values_[far] - principal_angle(values_[far]);
    if (shift != 0.0)
        for (double& v : values_) v -= shift;
}

double ArgBranch::eval(double s) const {
    const double u = positive_mod(s - anchor_s_, curve_.length());
    if (u == 0.0) throw ConfigError("argument branch evaluated at its anchor");
    return eval_offset(u);
}

double ArgBranch::eval_offset(double u) const {
    const double L = curve_.length();
    if (!(u > 0.0) || !(u < L)) throw ConfigError("argument branch offset out of range");
    double predicted;
    if (u <= offsets_.front()) {
        const double slope = (values_[1] - values_[0]) /
                             (std::log(offsets_[1]) - std::log(offsets_[0]));
        predicted = values_[0] + slope * (std::log(u) - std::log(offsets_[0]));
    } else if (u >= offsets_.back()) {
        const std::size_t n = offsets_.size();
        const double slope = (values_[n - 1] - values_[n - 2]) /
                             (std::log(L - offsets_[n - 1]) - std::log(L - offsets_[n - 2]));
        predicted = values_[n - 1] + slope * (std::log(L - u) - std::log(L - offsets_[n - 1]));
    } else {
        const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), u);
        const std::size_t k = static_cast<std::size_t>(std::distance(offsets_.begin(), it)) - 1;
        const double t = (u - offsets_[k]) / (offsets_[k + 1] - offsets_[k]);
        predicted = values_[k] + t * (values_[k + 1] - values_[k]);
    }
    const Complex z = curve_.point_at(positive_mod(anchor_s_ + u, curve_.length()));
    const double princ = std::arg(z - anchor_);
    const double snapped = princ + kTwoPi * std::round((predicted - princ) / kTwoPi);
    if (std::abs(snapped - predicted) > 2.9)
        throw ComputeError("argument branch interpolation too coarse");
    return snapped;
}

} // namespace sio
