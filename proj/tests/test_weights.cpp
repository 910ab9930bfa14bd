#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weights.hpp"

#include <cmath>

using namespace sio;

TEST_CASE("weight evaluation: power, empty, winding atoms") {
    Curve c = Curve::unit_circle();
    CHECK(Weight::unit(c).eval(1.0) == doctest::Approx(1.0));

    Weight w = Weight::unit(c).add_power(0.0, 0.3);
    for (double s : {0.5, 1.0, kPi, 5.0}) {
        const double r = std::abs(c.point_at(s) - Complex{1.0, 0.0});
        CHECK(w.eval(s) == doctest::Approx(std::pow(r, 0.3)).epsilon(1e-12));
    }

    // complex_power with gamma = i is the pure winding factor e^{-arg(tau-t)},
    // and the circle branch at t = 1 is arg = (s + pi)/2.
    Weight eta = Weight::unit(c).add_complex_power(0.0, Complex{0.0, 1.0});
    for (double s : {0.3, 1.0, 3.0, 6.0})
        CHECK(eta.eval(s) == doctest::Approx(std::exp(-(s + kPi) / 2.0)).epsilon(1e-9));

    // Mixed gamma = 0.5 + i matches the product of its parts.
    Weight mixed = Weight::unit(c).add_complex_power(0.0, Complex{0.5, 1.0});
    for (double s : {0.7, 2.0, 4.4}) {
        const double r = std::abs(c.point_at(s) - Complex{1.0, 0.0});
        CHECK(mixed.eval(s) ==
              doctest::Approx(std::pow(r, 0.5) * std::exp(-(s + kPi) / 2.0)).epsilon(1e-9));
    }
}

TEST_CASE("khvedelidze exponent lookup") {
    Curve c = Curve::unit_circle();
    Weight w = Weight::unit(c).add_power(0.0, 0.3).add_power(kPi, -0.2);
    CHECK(w.lambda_at(0.0) == doctest::Approx(0.3));
    CHECK(w.lambda_at(kPi) == doctest::Approx(-0.2));
    CHECK(w.lambda_at(1.0) == 0.0);
    CHECK(w.khvedelidze_only());

    Weight sp = Weight::unit(c).add_spiral(0.0, 1.0);
    CHECK(!sp.khvedelidze_only());
    CHECK_THROWS_AS(sp.lambda_at(0.0), ConfigError);
}

TEST_CASE("b quantity for the unit weight on the circle") {
    Curve c = Curve::unit_circle();
    PortionScanner scan(c, 0.0);
    Exponent p = Exponent::constant(2.0);
    Weight one = Weight::unit(c);

    BQuantity small = b_quantity(scan, one, p, 1e-3);
    CHECK(std::abs(small.value - 2.0) < 0.05);

    BQuantity full = b_quantity(scan, one, p, 2.0);
    CHECK(std::abs(full.value - kPi) < 1e-6);
}

TEST_CASE("b quantity is scale invariant") {
    Curve c = Curve::unit_circle();
    PortionScanner scan(c, 1.0);
    Exponent p = Exponent::constant(2.5);
    Weight w = Weight::unit(c).add_power(1.0, 0.2);
    Weight scaled = Weight::unit(c).add_power(1.0, 0.2).multiply_callable(
        [](double) { return std::log(7.0); });
    const double a = b_quantity(scan, w, p, 0.5).value;
    const double b = b_quantity(scan, scaled, p, 0.5).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("muckenhoupt scan verdicts for power weights") {
    Curve c = Curve::unit_circle();
    Exponent p = Exponent::constant(2.0);
    std::vector<double> t_grid = {0.0, 2.0, 4.0};

    MuckenhouptReport flat = muckenhoupt_scan(c, Weight::unit(c), p, t_grid, 24);
    CHECK(flat.verdict == ScanVerdict::Bounded);
    CHECK(std::abs(flat.sup_b - kPi) < 0.02);

    MuckenhouptReport ok =
        muckenhoupt_scan(c, Weight::unit(c).add_power(0.0, 0.3), p, t_grid, 24);
    CHECK(ok.verdict == ScanVerdict::Bounded);

    MuckenhouptReport bad =
        muckenhoupt_scan(c, Weight::unit(c).add_power(0.0, -0.7), p, t_grid, 24);
    CHECK(bad.verdict == ScanVerdict::Diverging);

    MuckenhouptReport high =
        muckenhoupt_scan(c, Weight::unit(c).add_power(0.0, 0.6), p, t_grid, 24);
    CHECK(high.verdict == ScanVerdict::Diverging);

    // Verdicts ignore positive scaling.
    MuckenhouptReport scaled = muckenhoupt_scan(
        c, Weight::unit(c).add_power(0.0, 0.3).multiply_callable([](double) { return 2.5; }), p,
        t_grid, 24);
    CHECK(scaled.verdict == ScanVerdict::Bounded);
}

TEST_CASE("mean oscillation of constants vanishes") {
    Curve c = Curve::unit_circle();
    PortionScanner scan(c, 0.0);
    OscillationReport rep =
        mean_oscillation(scan, [](double) { return 3.25; }, {}, {}, 1.0, 16);
    for (double om : rep.omega) CHECK(om == doctest::Approx(3.25).epsilon(1e-12));
    CHECK(rep.m_delta < 1e-10);
    CHECK(rep.bmo_norm_at_t < 1e-10);
}

TEST_CASE("log distance has bounded mean oscillation, reciprocal distance does not") {
    Curve c = Curve::unit_circle();
    PortionScanner scan(c, 0.0);
    auto logdist = [&](double s) { return std::log(std::abs(c.point_at(s) - Complex{1.0, 0.0})); };

    OscillationReport coarse = mean_oscillation(scan, logdist, {}, {0.0}, 1e9, 24, 1e-3);
    OscillationReport fine = mean_oscillation(scan, logdist, {}, {0.0}, 1e9, 40, 1e-5);
    CHECK(fine.bmo_norm_at_t > 0.1);
    CHECK(std::abs(fine.bmo_norm_at_t - coarse.bmo_norm_at_t) < 0.05 * fine.bmo_norm_at_t);

    auto recip = [&](double s) {
        return 1.0 / std::abs(c.point_at(s) - Complex{1.0, 0.0});
    };
    OscillationReport rc = mean_oscillation(scan, recip, {}, {0.0}, 1e9, 24, 1e-3);
    OscillationReport rf = mean_oscillation(scan, recip, {}, {0.0}, 1e9, 40, 1e-5);
    CHECK(rf.bmo_norm_at_t > 10.0 * rc.bmo_norm_at_t);
}

TEST_CASE("norm-product oscillation bound") {
    Curve c = Curve::unit_circle();
    PortionScanner scan(c, 0.0);
    Exponent p = Exponent::constant(2.0);

    BmoBoundReport unit = bmo_bound_check(scan, Weight::unit(c), p, 16);
    CHECK(unit.lower_bounds_hold);
    CHECK(unit.bmo_log_w < 1e-10);
    CHECK(unit.oscillation_bound_holds);

    BmoBoundReport pw = bmo_bound_check(scan, Weight::unit(c).add_power(0.0, 0.3), p, 24);
    CHECK(pw.lower_bounds_hold);
    CHECK(pw.oscillation_bound_holds);
    CHECK(pw.bmo_log_w > 0.01);
}

TEST_CASE("jensen consistency of the geometric mean") {
    Curve c = Curve::unit_circle();
    PortionScanner scan(c, 0.0);
    Weight w = Weight::unit(c).add_power(0.0, 0.3);
    auto wf = w.as_function();
    auto wlog = [&](double s) { return w.log_eval(s); };
    for (double R : {0.01, 0.1, 1.0, 1.9}) {
        const double geo = std::exp(portion_mean(scan, wlog, R, {}, {0.0}));
        const double arith = portion_mean(scan, wf, R, {}, {0.0});
        CHECK(geo <= arith * (1.0 + 1e-9));
    }
}
