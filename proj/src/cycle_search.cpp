#include "cycleforge/cycle_search.hpp"

#include "cycleforge/threads.hpp"

#include <cmath>

namespace cycleforge::filippov {

namespace {

std::optional<Real> try_displacement(const NumericSystem& s, Real rho,
                                     const DisplacementOptions& opt) {
    try {
        return numeric_displacement(s, rho, opt).value;
    } catch (const MathError&) {
        return std::nullopt;  // virtual orbit failed (e.g. inside a segment)
    }
}

} // namespace

CycleResult find_crossing_cycle(const NumericSystem& s, Real lo, Real hi,
                                const CycleSearchOptions& opt) {
    DisplacementOptions dopt = opt.displacement;
    if (dopt.section == Section::automatic) {
        const int sign = pick_section(s, hi);
        dopt.section = sign > 0 ? Section::positive_axis : Section::negative_axis;
    }

    // grid scan for a sign change among the radii with defined displacement
    Real a = 0, b = 0, fa = 0, fb = 0;
    bool have_prev = false, found = false;
    Real prev_r = 0, prev_f = 0;
    for (int i = 0; i <= opt.grid; ++i) {
        const Real r = lo + (hi - lo) * i / opt.grid;
        const auto f = try_displacement(s, r, dopt);
        if (!f) { have_prev = false; continue; }
        if (have_prev && (prev_f > 0) != (*f > 0)) {
            a = prev_r; fa = prev_f;
            b = r; fb = *f;
            found = true;
            break;
        }
        have_prev = true;
        prev_r = r;
        prev_f = *f;
    }
    if (!found)
        throw NoSignChange("displacement has no sign change over [" +
                           std::to_string((double)lo) + ", " + std::to_string((double)hi) + "]");

    // bisection with a secant polish
    Real m = a, fm = fa;
    for (int i = 0; i < 200; ++i) {
        m = a + (b - a) / 2;
        const auto f = try_displacement(s, m, dopt);
        if (!f) break;
        fm = *f;
        if (std::fabs((double)fm) <= (double)opt.residual_tol) break;
        if ((fm > 0) == (fa > 0)) { a = m; fa = fm; }
        else { b = m; fb = fm; }
        if (b - a < 1e-18L * std::max<Real>(1.0L, std::fabs((double)m))) break;
    }

    CycleResult res;
    res.rho = m;
    res.residual = std::fabs((double)fm);
    res.section_sign = dopt.section == Section::positive_axis ? +1 : -1;
    res.stable = fb < fa ? true : (fa < fb ? false : true);  // Delta decreasing => attracting

    // assemble the closed loop from the two proper half-orbits
    const Real anchor = res.section_sign > 0 ? 0.0L : M_PI;
    HalfOrbit up, down;
    if (res.section_sign > 0) {
        up = half_orbit(s.upper, res.rho, 0.0L, M_PI, false, dopt.ode, dopt.t_max, true,
                        Zone::upper);
        down = half_orbit(s.lower, up.radius, M_PI, 2.0L * M_PI, false, dopt.ode, dopt.t_max,
                          true, Zone::lower);
    } else {
        down = half_orbit(s.lower, res.rho, M_PI, 2.0L * M_PI, false, dopt.ode, dopt.t_max, true,
                          Zone::lower);
        up = half_orbit(s.upper, down.radius, 0.0L, M_PI, false, dopt.ode, dopt.t_max, true,
                        Zone::upper);
    }
    (void)anchor;
    const auto& first = res.section_sign > 0 ? up : down;
    const auto& second = res.section_sign > 0 ? down : up;
    res.cycle.samples = first.samples;
    Real t_shift = first.samples.empty() ? 0.0L : first.samples.back().t;
    for (const auto& smp : second.samples)
        res.cycle.samples.push_back({smp.t + t_shift, smp.x, smp.y, smp.zone});
    if (!first.samples.empty()) {
        res.cycle.events.push_back({0.0L, first.samples.front().x, SigmaKind::crossing});
        res.cycle.events.push_back({t_shift, second.samples.front().x, SigmaKind::crossing});
    }
    res.closure_error = std::fabs((double)(second.radius - res.rho));
    return res;
}

std::vector<PseudoHopfRow> pseudo_hopf_scan(const std::function<NumericSystem(Real)>& family,
                                            Real eps_lo, Real eps_hi, int steps,
                                            Real search_radius) {
    const std::size_t n = static_cast<std::size_t>(steps) + 1;
    std::function<PseudoHopfRow(std::size_t)> job = [&](std::size_t i) {
        PseudoHopfRow row;
        row.eps = eps_lo + (eps_hi - eps_lo) * (Real)i / (Real)steps;
        const NumericSystem sys = family(row.eps);
        const auto segs = find_sigma_segments(sys, -search_radius, search_radius);
        // keep the segment adjacent to the origin (the pseudo-Hopf one)
        for (const auto& seg : segs) {
            if (seg.kind != SigmaKind::sliding && seg.kind != SigmaKind::escaping) continue;
            if (!row.has_segment ||
                std::min(std::fabs((double)seg.lo), std::fabs((double)seg.hi)) <
                    std::min(std::fabs((double)row.seg_lo), std::fabs((double)row.seg_hi))) {
                row.has_segment = true;
                row.seg_lo = seg.lo;
                row.seg_hi = seg.hi;
                row.seg_kind = seg.kind;
            }
        }
        const Real extent =
            row.has_segment ? std::max<Real>(std::fabs((double)row.seg_lo), std::fabs((double)row.seg_hi))
                            : 0.0L;
        if (row.has_segment && extent > 1e-12L) {
            try {
                const Real bracket_lo = extent * 1.05L;
                const Real bracket_hi = std::max(extent * 24.0L, (Real)(0.3L * search_radius));
                const auto cyc = find_crossing_cycle(sys, bracket_lo, bracket_hi);
                row.has_cycle = true;
                row.cycle_rho = cyc.rho;
                row.cycle_stable = cyc.stable;
            } catch (const MathError&) {
                row.has_cycle = false;
            }
        }
        return row;
    };
    return util::parallel_map<PseudoHopfRow>(n, job);
}

} // namespace cycleforge::filippov
