#include "cycleforge/cycle_search.hpp"
#include "cycleforge/sysfile.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cycleforge;
using namespace cycleforge::filippov;

namespace {

NumericSystem linear_center_both() {
    RawPiecewiseField raw;
    raw.up_dx = raw.lo_dx = {{0, 1, -1.0L}};
    raw.up_dy = raw.lo_dy = {{1, 0, 1.0L}};
    return make_numeric(raw);
}

// piecewise-linear focus family: upper x' = 2c x - y, y' = x + d; lower the
// linear center.  d opens a segment (-d, 0); c < 0, d > 0 gives a genuine
// attracting crossing cycle.
NumericSystem focus_family(Real c, Real d) {
    RawPiecewiseField raw;
    raw.up_dx = {{1, 0, 2 * c}, {0, 1, -1.0L}};
    raw.up_dy = {{0, 0, d}, {1, 0, 1.0L}};
    raw.lo_dx = {{0, 1, -1.0L}};
    raw.lo_dy = {{1, 0, 1.0L}};
    return make_numeric(raw);
}

NumericSystem palomba(Real eps) {
    static const auto parsed = io::parse_system_file(testsupport::fixture("palomba"));
    return io::to_numeric(parsed, eps);
}

} // namespace

TEST_CASE("classification: identical fields crossing, trichotomy") {
    const auto sys = linear_center_both();
    for (double x : {-0.7, -0.2, 0.3, 1.1}) {
        const auto c = classify_point(sys, (Real)x);
        CHECK(c.kind == SigmaKind::crossing);
        CHECK((double)c.upper_normal_speed == doctest::Approx(x));
        CHECK((double)c.lower_normal_speed == doctest::Approx(x));
    }
    // x = 0 is the tangency at the monodromic origin
    CHECK(classify_point(sys, 0.0L).kind == SigmaKind::tangency);
}

TEST_CASE("classification: Palomba sliding segment sits at (0.6, 0.7) original") {
    const auto sys = palomba(0.5L);  // normalized: segment on working (0, 0.1)
    // working coordinate u maps to original x = u + 3/5
    CHECK(classify_point(sys, 0.05L).kind == SigmaKind::escaping);
    CHECK(classify_point(sys, -0.05L).kind == SigmaKind::crossing);
    CHECK(classify_point(sys, 0.15L).kind == SigmaKind::crossing);

    const auto segs = find_sigma_segments(sys, -0.5L, 0.5L);
    REQUIRE(segs.size() == 1);
    CHECK((double)segs[0].lo == doctest::Approx(0.0).epsilon(1e-9));
    CHECK((double)segs[0].hi == doctest::Approx(0.1).epsilon(1e-9));
    REQUIRE(sys.back.has_value());
    CHECK((double)sys.back->to_original(segs[0].lo, 0.0L)[0] == doctest::Approx(0.6));
    CHECK((double)sys.back->to_original(segs[0].hi, 0.0L)[0] == doctest::Approx(0.7));
    // every non-tangent point of the scan is exactly one kind
    for (double u : {-0.3, -0.01, 0.02, 0.09, 0.2}) {
        const auto c = classify_point(sys, (Real)u);
        const int kinds = (c.kind == SigmaKind::crossing) + (c.kind == SigmaKind::sliding) +
                          (c.kind == SigmaKind::escaping);
        CHECK(kinds == 1);
    }
}

TEST_CASE("classification: raw Kolmogorov lines are all tangency") {
    // untranslated Kolmogorov: dy/dt = y (...) vanishes identically on y = 0
    static const auto parsed = io::parse_system_file(testsupport::fixture("palomba"));
    auto raw_parsed = parsed;
    raw_parsed.center.reset();  // keep original coordinates
    const auto sys = io::to_numeric(raw_parsed, 0.5L);
    for (int i = 0; i <= 40; ++i) {
        const Real x = -2.0L + 4.0L * i / 40;
        CHECK(classify_point(sys, x).kind == SigmaKind::tangency);
    }
}

TEST_CASE("sliding field formula") {
    // Y+ = -1, Y- = 1, X+ = X- = c  ->  lambda = 1/2, dx/dt = c
    RawPiecewiseField raw;
    raw.up_dx = {{0, 0, 0.7L}};
    raw.up_dy = {{0, 0, -1.0L}};
    raw.lo_dx = {{0, 0, 0.7L}};
    raw.lo_dy = {{0, 0, 1.0L}};
    const auto sys = make_numeric(raw);
    CHECK((double)sliding_lambda(sys, 0.3L) == doctest::Approx(0.5));
    CHECK((double)sliding_field(sys, 0.3L) == doctest::Approx(0.7));

    // Y+ = -2, Y- = 1, X+ = 3, X- = 0  ->  lambda = 1/3, dx/dt = 1
    RawPiecewiseField raw2;
    raw2.up_dx = {{0, 0, 3.0L}};
    raw2.up_dy = {{0, 0, -2.0L}};
    raw2.lo_dx = {{0, 0, 0.0L}};
    raw2.lo_dy = {{0, 0, 1.0L}};
    const auto sys2 = make_numeric(raw2);
    CHECK((double)sliding_lambda(sys2, 0.0L) == doctest::Approx(1.0 / 3));
    CHECK((double)sliding_field(sys2, 0.0L) == doctest::Approx(1.0));

    // crossing points are rejected
    CHECK_THROWS_AS(sliding_field(linear_center_both(), 0.5L), NotSlidingRegion);
}

TEST_CASE("sliding segment endpoints are boundary equilibria of the fold fields") {
    // Palomba's normalization swaps the halves, so the eps-carrying field is
    // the working-lower one: its normal speed vanishes at u = 0.1, the
    // unperturbed (working-upper) one at u = 0.  lambda -> 0 continuously at
    // the lower fold and the sliding field matches the tangent field there.
    const auto sys = palomba(0.5L);
    REQUIRE(sys.back.has_value());
    CHECK(sys.back->side_swap);
    CHECK((double)classify_point(sys, 0.1L).lower_normal_speed ==
          doctest::Approx(0.0).scale(1.0));
    CHECK((double)classify_point(sys, 0.0L).upper_normal_speed ==
          doctest::Approx(0.0).scale(1.0));
    const Real just_in = 0.0995L;
    const Real lam = sliding_lambda(sys, just_in);
    CHECK((double)lam == doctest::Approx(0.0).scale(1.0).epsilon(0.03));
    const Real fs = sliding_field(sys, just_in);
    const Real fl = sys.lower.fx.eval<Real>(just_in, 0.0L);
    CHECK((double)fs == doctest::Approx((double)fl).epsilon(0.02));
}

TEST_CASE("linear center returns to its start after one turn") {
    const auto sys = linear_center_both();
    IntegrateOptions opt;
    opt.t_max = 2 * M_PI + 0.5;
    const auto tr = integrate(sys, 0.5L, 0.0L, opt);
    REQUIRE(tr.events.size() >= 2);
    // after time 2 pi the orbit is back at (rho, 0)
    double best = 1e9;
    for (const auto& s : tr.samples) {
        const double dt = std::fabs((double)s.t - 2 * M_PI);
        if (dt < 0.05)
            best = std::min(best, std::hypot((double)s.x - 0.5, (double)s.y));
    }
    // sample grid is coarse; check the crossing event radius instead
    double event_err = 1e9;
    for (const auto& e : tr.events)
        if ((double)e.x > 0) event_err = std::min(event_err, std::fabs((double)e.x - 0.5));
    CHECK(event_err < 1e-9);
    CHECK(best < 0.05);
}

TEST_CASE("Palomba at eps = 0 closes its orbits") {
    const auto sys = palomba(0.0L);
    DisplacementOptions o;
    for (double rho : {0.05, 0.1, 0.2}) {
        const auto d = numeric_displacement(sys, (Real)rho, o);
        CHECK(std::fabs((double)d.value) < 1e-12);
    }
}

TEST_CASE("Palomba at eps = 0.5 spirals outward from the repelling segment") {
    const auto sys = palomba(0.5L);
    IntegrateOptions opt;
    opt.t_max = 40.0L;
    const auto tr = integrate(sys, 0.3L, 0.0L, opt);
    CHECK(tr.events.size() >= 6);  // several crossings: orbit keeps circulating
    std::vector<double> outward;
    for (const auto& e : tr.events)
        if ((double)e.x > 0) outward.push_back((double)e.x);
    REQUIRE(outward.size() >= 3);
    CHECK(outward.front() < outward.back());  // radius grows turn by turn
    for (std::size_t i = 1; i < outward.size(); ++i) CHECK(outward[i] >= outward[i - 1] - 1e-12);
}

TEST_CASE("time reversal consistency of the upper half map") {
    const auto sys = palomba(0.0L);
    const Real rho = 0.15L;
    DisplacementOptions o;
    const auto fwd = half_orbit(sys.upper, rho, 0.0L, M_PI, false, o.ode);
    const auto back = half_orbit(sys.upper, fwd.radius, M_PI, 0.0L, true, o.ode);
    CHECK(std::fabs((double)(back.radius - rho)) <= 1e-9 * (double)rho);
}

TEST_CASE("Palomba first integral is conserved along single-zone arcs") {
    // H(x, y) = gamma2 x - eta2 ln x + gamma1 y - eta1 ln y in original
    // coordinates, conserved by the unperturbed field
    const auto sys = palomba(0.0L);
    REQUIRE(sys.back.has_value());
    const auto H = [&](Real u, Real w) {
        const auto p = sys.back->to_original(u, w);
        const double x = (double)p[0], y = (double)p[1];
        return 5 * x - 3 * std::log(x) + 2 * y - 1 * std::log(y);
    };
    IntegrateOptions opt;
    opt.t_max = 1.2L;  // well inside one half-turn: a single-zone arc
    const auto tr = integrate(sys, 0.25L, 0.0L, opt);
    const double H0 = H(0.25L, 0.0L);
    for (const auto& s : tr.samples) {
        if (s.zone != Zone::upper) continue;
        CHECK(std::fabs(H(s.x, s.y) - H0) <= 1e-8 * std::fabs(H0));
    }
}

TEST_CASE("cycle search on a family with a genuine crossing cycle") {
    const auto sys = focus_family(-0.15L, 0.1L);
    const auto segs = find_sigma_segments(sys, -1.0L, 1.0L);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].kind == SigmaKind::escaping);
    CHECK((double)segs[0].lo == doctest::Approx(-0.1));
    CHECK((double)segs[0].hi == doctest::Approx(0.0).scale(1.0));

    const auto cyc = find_crossing_cycle(sys, 0.12L, 2.0L);
    CHECK(cyc.residual <= 1e-10L);
    CHECK(cyc.closure_error <= 1e-8L * cyc.rho);
    CHECK(cyc.stable);
    // the cycle enplanes the segment: its crossings straddle [-0.1, 0]
    REQUIRE(cyc.cycle.events.size() == 2);
    const double x0 = (double)cyc.cycle.events[0].x, x1 = (double)cyc.cycle.events[1].x;
    CHECK(std::max(x0, x1) > 0.0);
    CHECK(std::min(x0, x1) < -0.1);

    // the full Filippov return map fixes the point to 1e-8 rho*
    IntegrateOptions opt;
    opt.t_max = 6.5L;
    const auto tr = integrate(sys, cyc.section_sign * cyc.rho, 0.0L, opt);
    double best = 1e9;
    for (const auto& e : tr.events) {
        if (e.t < 1.0L) continue;
        best = std::min(best, std::fabs((double)(e.x - cyc.section_sign * cyc.rho)));
    }
    CHECK(best <= 1e-8 * (double)cyc.rho);
}

TEST_CASE("cycle search demands a sign change") {
    const auto sys = linear_center_both();
    CHECK_THROWS_AS(find_crossing_cycle(sys, 0.05L, 0.4L), NoSignChange);
}

TEST_CASE("pseudo-Hopf scan of the piecewise-linear family") {
    const auto family = [](Real d) { return focus_family(-0.15L, d); };
    const auto rows = pseudo_hopf_scan(family, -0.08L, 0.08L, 8, 1.0L);
    REQUIRE(rows.size() == 9);

    const auto& zero = rows[4];
    CHECK((double)zero.eps == doctest::Approx(0.0).scale(1.0));
    CHECK_FALSE(zero.has_segment);
    CHECK_FALSE(zero.has_cycle);

    // segment grows with |eps| and carries a cycle on the d > 0 side whose
    // radius shrinks monotonically to zero as eps -> 0+
    std::vector<double> radii;
    for (const auto& r : rows) {
        if (r.eps > 1e-12L) {
            CHECK(r.has_segment);
            CHECK(r.seg_kind == SigmaKind::escaping);
            CHECK(r.has_cycle);
            radii.push_back((double)r.cycle_rho);
        }
    }
    REQUIRE(radii.size() == 4);
    for (std::size_t i = 1; i < radii.size(); ++i) CHECK(radii[i] > radii[i - 1]);
}

TEST_CASE("pseudo-Hopf scan of the Palomba family reports the segment data") {
    static const auto parsed = io::parse_system_file(testsupport::fixture("palomba"));
    const auto family = [&](Real eps) { return io::to_numeric(parsed, eps); };
    const auto rows = pseudo_hopf_scan(family, -0.5L, 0.5L, 4, 0.8L);
    REQUIRE(rows.size() == 5);
    CHECK_FALSE(rows[2].has_segment);  // eps = 0
    CHECK(rows[4].has_segment);        // eps = +0.5
    CHECK(rows[4].seg_kind == SigmaKind::escaping);
    CHECK((double)rows[4].seg_hi == doctest::Approx(0.1));
    CHECK(rows[0].has_segment);        // eps = -0.5
    CHECK(rows[0].seg_kind == SigmaKind::sliding);
    // the integrable Palomba family carries no crossing cycle at any eps
    for (const auto& r : rows) CHECK_FALSE(r.has_cycle);
}

TEST_CASE("sliding dynamics: orbit lands on the segment and slides to the fold") {
    // attracting (sliding) segment: reverse the escaping example
    RawPiecewiseField raw;
    raw.up_dx = {{0, 0, 0.5L}};            // constant drift rightward
    raw.up_dy = {{0, 0, -1.0L}};           // pushes down onto the line
    raw.lo_dx = {{0, 0, 0.5L}};
    raw.lo_dy = {{1, 0, 1.0L}, {0, 0, 0.5L}};  // y' = x + 1/2: up for x > -1/2
    const auto sys = make_numeric(raw);
    // on (-1/2, inf): upper pushes down, lower pushes up: sliding
    CHECK(classify_point(sys, 0.0L).kind == SigmaKind::sliding);
    IntegrateOptions opt;
    opt.t_max = 10.0L;
    const auto tr = integrate(sys, 0.0L, 0.8L, opt);
    bool slid = false;
    for (const auto& s : tr.samples) slid = slid || s.zone == Zone::sliding;
    CHECK(slid);
    // slides rightward forever (lambda stays in (0,1)): ends by time limit
    CHECK(tr.stop == StopReason::time_limit);
    CHECK((double)tr.samples.back().x > 1.0);
}
