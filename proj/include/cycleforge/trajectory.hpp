#pragma once

#include "cycleforge/ode.hpp"
#include "cycleforge/sigma.hpp"

#include <vector>

namespace cycleforge::filippov {

enum class Zone { upper, lower, sliding };

const char* zone_name(Zone z);

enum class StopReason {
    time_limit,          // reached t_max
    sliding_equilibrium, // sliding field vanished inside the segment
    tangency,            // hit a tangency point; truncated with a flag
    ambiguous,           // forward dynamics not unique (escaping start)
    step_failure,        // integrator gave up (reported via exception wrap)
    event_budget         // too many switching events (suspected chattering)
};

const char* stop_reason_name(StopReason r);

struct TrajectorySample {
    Real t, x, y;
    Zone zone;
};

struct TrajectoryEvent {
    Real t, x;
    SigmaKind kind;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<TrajectoryEvent> events;
    StopReason stop = StopReason::time_limit;
    bool truncated() const {
        return stop == StopReason::tangency || stop == StopReason::ambiguous ||
               stop == StopReason::event_budget;
    }
};

struct IntegrateOptions {
    Real t_max = 50.0L;
    Real direction = 1.0L;  // +1 forward, -1 backward
    int max_events = 512;
    ode::OdeOptions<Real> ode{};
};

/// Filippov orbit through (x0, y0): integrates inside a zone with event
/// detection on y = 0 (dense sign-change bracketing plus partial-step
/// bisection), classifies each switching-line hit, crosses or enters the
/// sliding dynamics accordingly, and integrates sliding as a 1-D ODE on the
/// line with exit at the lambda in {0, 1} tangencies or at an interior
/// sliding equilibrium.  Escaping segments attract in backward time, so the
/// roles of sliding and escaping swap when direction < 0.
Trajectory integrate(const NumericSystem& s, Real x0, Real y0, const IntegrateOptions& opt = {});

} // namespace cycleforge::filippov
