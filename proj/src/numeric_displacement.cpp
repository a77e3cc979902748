#include "cycleforge/numeric_displacement.hpp"

#include <cmath>

namespace cycleforge::filippov {

HalfOrbit half_orbit(const VectorField2& field, Real rho, Real theta0, Real theta_target,
                     bool backward, const ode::OdeOptions<Real>& ode_opt, Real t_max,
                     bool keep_samples, Zone tag) {
    using State = std::array<Real, 3>;  // x, y, accumulated polar angle
    const Real sgn = backward ? -1.0L : 1.0L;
    auto rhs = [&field, sgn](Real, const State& s) -> State {
        const auto v = field.eval<Real>(s[0], s[1]);
        const Real r2 = s[0] * s[0] + s[1] * s[1];
        return {sgn * v[0], sgn * v[1], sgn * (s[0] * v[1] - s[1] * v[0]) / r2};
    };

    ode::AdaptiveDopri5<3, Real, Real, decltype(rhs)> drv(rhs, ode_opt);
    // section anchors sit exactly on the axis
    const Real cx = std::fabs(std::remainder((double)theta0, 2 * M_PI)) < 1e-9 ? rho : -rho;
    const State start{cx, 0.0L, theta0};
    drv.start(0.0L, start, 1.0L);

    HalfOrbit out;
    if (keep_samples) out.samples.push_back({0.0L, start[0], start[1], tag});
    const auto angle_gap = [&](const State& s) { return s[2] - theta_target; };
    while (true) {
        if (std::fabs((double)drv.t()) > (double)t_max)
            throw StepFailure("half orbit did not reach the target angle within t_max");
        drv.advance();
        if ((angle_gap(drv.y_prev()) > 0) != (angle_gap(drv.y()) > 0)) {
            auto [frac, hit] = ode::bisect_event(drv, angle_gap);
            (void)frac;
            out.radius = std::hypot((double)hit[0], (double)hit[1]);
            if (keep_samples)
                out.samples.push_back(
                    {drv.t_prev() + (drv.t() - drv.t_prev()) * frac, hit[0], hit[1], tag});
            return out;
        }
        if (keep_samples)
            out.samples.push_back({drv.t(), drv.y()[0], drv.y()[1], tag});
    }
}

int pick_section(const NumericSystem& s, Real rho_max) {
    const auto clean = [&](int side) {
        // geometric sample of radii; avoids the tangency at the origin itself
        for (int i = 0; i < 32; ++i) {
            const Real r = rho_max * std::pow(0.75, i);
            const auto c = classify_point(s, side * r);
            if (c.kind != SigmaKind::crossing) return false;
        }
        return true;
    };
    if (clean(+1)) return +1;
    if (clean(-1)) return -1;
    return +1;  // both obstructed; let the caller's integration surface it
}

DisplacementResult numeric_displacement(const NumericSystem& s, Real rho,
                                        const DisplacementOptions& opt) {
    DisplacementResult res;
    res.section_sign = opt.section == Section::automatic
                           ? pick_section(s, rho)
                           : (opt.section == Section::positive_axis ? +1 : -1);

    if (res.section_sign > 0) {
        const Real plus =
            half_orbit(s.upper, rho, 0.0L, M_PI, false, opt.ode, opt.t_max).radius;
        const Real minus =
            half_orbit(s.lower, rho, 0.0L, -M_PI, true, opt.ode, opt.t_max).radius;
        res.value = plus - minus;  // Pi+ - (Pi-)^{-1}
    } else {
        const Real minus =
            half_orbit(s.lower, rho, M_PI, 2.0L * M_PI, false, opt.ode, opt.t_max).radius;
        const Real plus =
            half_orbit(s.upper, rho, M_PI, 0.0L, true, opt.ode, opt.t_max).radius;
        res.value = minus - plus;  // Pi- - (Pi+)^{-1}, same stability orientation
    }
    return res;
}

} // namespace cycleforge::filippov
