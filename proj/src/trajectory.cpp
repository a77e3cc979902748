#include "cycleforge/trajectory.hpp"

#include <cmath>

namespace cycleforge::filippov {

const char* zone_name(Zone z) {
    switch (z) {
        case Zone::upper: return "upper";
        case Zone::lower: return "lower";
        case Zone::sliding: return "sliding";
    }
    return "?";
}

const char* stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::time_limit: return "t_max";
        case StopReason::sliding_equilibrium: return "sliding_equilibrium";
        case StopReason::tangency: return "tangency";
        case StopReason::ambiguous: return "ambiguous";
        case StopReason::step_failure: return "step_failure";
        case StopReason::event_budget: return "event_budget";
    }
    return "?";
}

namespace {

using State2 = std::array<Real, 2>;
using State1 = std::array<Real, 1>;

// forward declaration of the mutually recursive zone/sliding passes
struct Engine {
    const NumericSystem& sys;
    const IntegrateOptions& opt;
    Trajectory traj;
    Real t = 0;
    int events = 0;

    bool time_left() const { return std::fabs((double)t) < (double)opt.t_max; }

    void sample(Real x, Real y, Zone z) { traj.samples.push_back({t, x, y, z}); }

    SigmaKind effective_entry_kind(SigmaKind k) const {
        // escaping segments are the sliding ones of the time-reversed flow
        if (opt.direction < 0) {
            if (k == SigmaKind::sliding) return SigmaKind::escaping;
            if (k == SigmaKind::escaping) return SigmaKind::sliding;
        }
        return k;
    }

    void run(Real x0, Real y0) {
        const Real scale = std::max<Real>(std::hypot((double)x0, (double)y0), 1e-9L);
        if (std::fabs((double)y0) > 1e-13L * scale) {
            zone_pass(x0, y0, y0 > 0 ? Zone::upper : Zone::lower);
            return;
        }
        const auto c = classify_point(sys, x0);
        switch (effective_entry_kind(c.kind)) {
            case SigmaKind::crossing: {
                const bool dir_up = (c.upper_normal_speed > 0) == (opt.direction > 0);
                zone_pass(x0, 0.0L, dir_up ? Zone::upper : Zone::lower);
                return;
            }
            case SigmaKind::sliding:
                sliding_pass(x0);
                return;
            case SigmaKind::escaping:
                traj.stop = StopReason::ambiguous;
                sample(x0, 0.0L, Zone::sliding);
                return;
            case SigmaKind::tangency:
                traj.stop = StopReason::tangency;
                sample(x0, 0.0L, Zone::sliding);
                return;
        }
    }

    void zone_pass(Real x0, Real y0, Zone zone) {
        const auto& field = sys.side(zone == Zone::upper);
        auto rhs = [&field, this](Real, const State2& s) -> State2 {
            auto v = field.eval<Real>(s[0], s[1]);
            return {opt.direction * v[0], opt.direction * v[1]};
        };
        ode::AdaptiveDopri5<2, Real, Real, decltype(rhs)> drv(rhs, opt.ode);
        drv.start(t, {x0, y0}, 1.0L);
        sample(x0, y0, zone);

        const Real arm = 1e-10L * std::max<Real>(std::hypot((double)x0, (double)y0), 1e-6L);
        bool armed = std::fabs((double)y0) > (double)arm;
        while (true) {
            if (!time_left()) { traj.stop = StopReason::time_limit; return; }
            try {
                drv.advance();
            } catch (const StepFailure&) {
                traj.stop = StopReason::step_failure;
                throw;
            }
            t = drv.t();
            const auto& y = drv.y();
            if (armed && (drv.y_prev()[1] > 0) != (y[1] > 0)) {
                auto [frac, hit] = ode::bisect_event(drv, [](const State2& s) { return s[1]; });
                t = drv.t_prev() + (drv.t() - drv.t_prev()) * frac;
                sample(hit[0], 0.0L, zone);
                on_sigma_hit(hit[0], zone);
                return;
            }
            if (!armed && std::fabs((double)y[1]) > (double)arm) armed = true;
            sample(y[0], y[1], zone);
        }
    }

    void on_sigma_hit(Real x, Zone from) {
        const auto c = classify_point(sys, x);
        traj.events.push_back({t, x, c.kind});
        if (++events > opt.max_events) { traj.stop = StopReason::event_budget; return; }
        switch (effective_entry_kind(c.kind)) {
            case SigmaKind::crossing:
                zone_pass(x, 0.0L, from == Zone::upper ? Zone::lower : Zone::upper);
                return;
            case SigmaKind::sliding:
                sliding_pass(x);
                return;
            case SigmaKind::escaping:
                traj.stop = StopReason::ambiguous;
                return;
            case SigmaKind::tangency:
                traj.stop = StopReason::tangency;
                return;
        }
    }

    void sliding_pass(Real x0) {
        // raw Filippov combination; well-defined near the segment even where
        // lambda leaves [0, 1]
        auto lambda_at = [this](Real x) { return sliding_lambda(sys, x); };
        auto rhs = [this](Real, const State1& s) -> State1 {
            const Real x = s[0];
            const Real xu = sys.upper.fx.eval<Real>(x, 0.0L);
            const Real xl = sys.lower.fx.eval<Real>(x, 0.0L);
            const Real lam = sliding_lambda(sys, x);
            return {opt.direction * (lam * xu + (1.0L - lam) * xl)};
        };
        ode::AdaptiveDopri5<1, Real, Real, decltype(rhs)> drv(rhs, opt.ode);
        drv.start(t, {x0}, 1.0L);
        sample(x0, 0.0L, Zone::sliding);

        const Real eq_tol = 1e-13L * std::max<Real>(std::fabs((double)x0), 1e-6L);
        while (true) {
            if (!time_left()) { traj.stop = StopReason::time_limit; return; }
            if (std::fabs((double)rhs(t, drv.y())[0]) <= (double)eq_tol) {
                traj.stop = StopReason::sliding_equilibrium;
                return;
            }
            try {
                drv.advance();
            } catch (const StepFailure&) {
                traj.stop = StopReason::step_failure;
                throw;
            }
            t = drv.t();
            // exit at lambda = 0 (fold of the lower field) or lambda = 1 (upper)
            const Real l_prev = lambda_at(drv.y_prev()[0]);
            const Real l_now = lambda_at(drv.y()[0]);
            for (const Real bound : {0.0L, 1.0L}) {
                if ((l_prev > bound) != (l_now > bound)) {
                    auto [frac, hit] = ode::bisect_event(
                        drv, [&](const State1& s) { return lambda_at(s[0]) - bound; });
                    t = drv.t_prev() + (drv.t() - drv.t_prev()) * frac;
                    sample(hit[0], 0.0L, Zone::sliding);
                    traj.events.push_back({t, hit[0], SigmaKind::tangency});
                    if (++events > opt.max_events) { traj.stop = StopReason::event_budget; return; }
                    // continue along the field that became tangent
                    zone_pass(hit[0], 0.0L, bound == 1.0L ? Zone::upper : Zone::lower);
                    return;
                }
            }
            sample(drv.y()[0], 0.0L, Zone::sliding);
        }
    }
};

} // namespace

Trajectory integrate(const NumericSystem& s, Real x0, Real y0, const IntegrateOptions& opt) {
    Engine eng{s, opt, {}, 0.0L, 0};
    eng.run(x0, y0);
    return std::move(eng.traj);
}

} // namespace cycleforge::filippov
