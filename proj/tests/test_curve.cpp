#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "curve.hpp"

#include <cmath>

using namespace sio;

TEST_CASE("unit circle basic geometry") {
    Curve c = Curve::unit_circle();
    CHECK(c.length() == doctest::Approx(kTwoPi).epsilon(1e-14));
    CHECK(std::abs(c.point_at(0.0) - Complex{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(c.point_at(kPi) - Complex{-1.0, 0.0}) < 1e-14);
    CHECK(std::abs(c.tangent_at(0.0) - Complex{0.0, 1.0}) < 1e-14);
    CHECK(!c.orientation_flipped());
}

TEST_CASE("degenerate ellipse matches the circle") {
    Curve c = Curve::ellipse(1.0, 1.0);
    CHECK(c.length() == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK(std::abs(c.point_at(kPi / 2) - Complex{0.0, 1.0}) < 1e-9);
    CHECK(std::abs(c.point_at(c.length() * 0.999999) - c.point_at(0.0)) < 1e-4);
}

TEST_CASE("ellipse tangents are unit and the curve closes") {
    Curve c = Curve::ellipse(1.0, 0.6);
    CHECK(c.length() > kTwoPi * 0.6);
    CHECK(c.length() < kTwoPi);
    for (double f : {0.1, 0.25, 0.5, 0.8})
        CHECK(std::abs(c.tangent_at(f * c.length())) == doctest::Approx(1.0).epsilon(1e-9));
    // Arc-length parametrization: chord of a short piece matches its length.
    const double s0 = 0.37 * c.length(), ds = 1e-5;
    CHECK(std::abs(c.point_at(s0 + ds) - c.point_at(s0)) == doctest::Approx(ds).epsilon(1e-6));
}

TEST_CASE("circle portions have measure 4 asin(R/2)") {
    Curve c = Curve::unit_circle();
    PortionScanner scan(c, 0.0);
    CHECK(scan.max_distance() == doctest::Approx(2.0).epsilon(1e-9));
    for (double r : {0.05, 0.3, 1.0, 1.7, 1.95}) {
        const PortionDecomposition& p = scan.portion(r);
        CHECK(std::abs(p.measure - 4.0 * std::asin(r / 2.0)) < 1e-8);
    }
    CHECK(std::abs(scan.portion(1.0).measure - 2.0 * kPi / 3.0) < 1e-8);
    // Radii beyond the diameter cover the whole curve.
    CHECK(scan.portion(3.0).whole);
    CHECK(scan.portion(3.0).measure == doctest::Approx(kTwoPi));
}

TEST_CASE("portions grow with the radius and contain the anchor") {
    Curve c = Curve::ellipse(1.0, 0.6);
    PortionScanner scan(c, 0.25 * c.length());
    double prev = 0.0;
    for (double r : {1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0}) {
        const PortionDecomposition& p = scan.portion(r);
        CHECK(p.measure >= prev);
        prev = p.measure;
        bool holds_anchor = false;
        for (const ArcInterval& iv : p.intervals)
            holds_anchor |= (iv.lo <= scan.anchor_s() && scan.anchor_s() <= iv.hi);
        CHECK(holds_anchor);
        CHECK(p.measure >= 2.0 * r * 0.9); // at least the two nearby arcs
    }
}

TEST_CASE("annulus measure is the exact difference of portion measures") {
    Curve c = Curve::unit_circle();
    PortionScanner scan(c, 1.0);
    for (double r : {0.08, 0.4, 1.2, 1.9}) {
        const PortionDecomposition an = scan.annulus(r);
        const double expected = scan.portion(r).measure - scan.portion(r / 2.0).measure;
        CHECK(an.measure == expected); // exact by construction
        const double closed = 4.0 * (std::asin(r / 2.0) - std::asin(r / 4.0));
        CHECK(std::abs(an.measure - closed) < 1e-8);
        CHECK(an.measure >= r / 2.0 - 1e-8);
        double via_intervals = 0.0;
        for (const ArcInterval& iv : an.intervals) via_intervals += iv.length();
        CHECK(std::abs(via_intervals - an.measure) < 1e-8);
    }
    CHECK_THROWS_AS(scan.annulus(2.5), ConfigError);
}

TEST_CASE("portion growth constant of the circle is pi") {
    Curve c = Curve::unit_circle();
    PortionScanner scan(c, 2.0);
    const double val = carleson_at(scan);
    CHECK(std::abs(val - kPi) < 0.01);
    CHECK(val >= 1.0);
    CarlesonEstimate est = carleson_constant(c, {0.0, 1.0, 2.5, 4.0});
    CHECK(std::abs(est.value - kPi) < 0.01);
    CHECK(std::abs(est.radius - 2.0) < 1e-6);
}

TEST_CASE("interval subtraction") {
    std::vector<ArcInterval> outer = {{0.0, 2.0}, {3.0, 5.0}};
    std::vector<ArcInterval> inner = {{0.5, 1.0}, {1.5, 3.5}};
    auto diff = subtract_intervals(outer, inner);
    REQUIRE(diff.size() == 3);
    CHECK(diff[0].lo == doctest::Approx(0.0));
    CHECK(diff[0].hi == doctest::Approx(0.5));
    CHECK(diff[1].lo == doctest::Approx(1.0));
    CHECK(diff[1].hi == doctest::Approx(1.5));
    CHECK(diff[2].lo == doctest::Approx(3.5));
    CHECK(diff[2].hi == doctest::Approx(5.0));
}

TEST_CASE("circle argument branch is affine in arc length") {
    Curve c = Curve::unit_circle();
    ArgBranch branch(c, 0.0);
    for (double u : {1e-6, 1e-3, 0.1, 1.0, kPi, 4.0, 6.0, kTwoPi - 1e-6}) {
        CHECK(std::abs(branch.eval_offset(u) - (u + kPi) / 2.0) < 1e-9);
    }
    // Successive table samples stay within pi of each other.
    const auto& vals = branch.table_values();
    for (std::size_t i = 1; i < vals.size(); ++i)
        CHECK(std::abs(vals[i] - vals[i - 1]) < kPi);
}

TEST_CASE("spiral patch winds as prescribed at the marked point") {
    const double twist = 0.5;
    Curve c = Curve::log_spiral_patch(twist);
    CHECK(std::abs(c.point_at(0.0)) < 1e-14);
    CHECK(c.spiral_twist() == doctest::Approx(twist));
    CHECK(!c.orientation_flipped());

    ArgBranch branch(c, 0.0);
    const double L = c.length();
    for (double frac : {1e-10, 1e-7, 1e-4, 1e-2, 0.2, 0.5, 0.9, 0.999, 0.9999999}) {
        const double u = frac * L;
        const double r = std::abs(c.point_at(u));
        const double combo = branch.eval_offset(u) + twist * std::log(r);
        CHECK(std::abs(combo) < 8.0); // bounded combination: spiral winding law
    }
}

TEST_CASE("spiral patch arm radii and closure ordering") {
    Curve c = Curve::log_spiral_patch(0.5, 1.0);
    const double clen = std::sqrt(1.25);
    // On the outgoing arm, |z| = s / sqrt(1 + twist^2) exactly.
    for (double s : {0.1, 0.5, 1.0}) {
        CHECK(std::abs(c.point_at(s)) == doctest::Approx(s / clen).epsilon(1e-12));
    }
    // The far cap stays at radius >= extent.
    PortionScanner scan(c, 0.0);
    CHECK(scan.max_distance() >= 1.0);
    CHECK(scan.max_distance() < 3.0);
}

TEST_CASE("polyline curves support both orientations") {
    std::vector<Complex> ccw = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    Curve a = Curve::from_points(ccw);
    CHECK(!a.orientation_flipped());
    CHECK(a.length() == doctest::Approx(4.0 * std::sqrt(2.0)));

    std::vector<Complex> cw = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
    Curve b = Curve::from_points(cw);
    CHECK(b.orientation_flipped());
    // Both start at the same vertex and trace the same CCW path.
    for (double f : {0.0, 0.1, 0.37, 0.62, 0.9})
        CHECK(std::abs(a.point_at(f * a.length()) - b.point_at(f * b.length())) < 1e-12);
}

TEST_CASE("invalid configurations are rejected") {
    CHECK_THROWS_AS(Curve::ellipse(0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(Curve::log_spiral_patch(0.5, 0.01), ConfigError);
    CHECK_THROWS_AS(Curve::from_points({{0.0, 0.0}, {1.0, 0.0}}), ConfigError);
    Curve c = Curve::unit_circle();
    PortionScanner scan(c, 0.0);
    CHECK_THROWS_AS(scan.portion(-1.0), ConfigError);
    CHECK_THROWS_AS(Curve::log_spiral_patch(0.5).tangent_at(0.0), ComputeError);
}
