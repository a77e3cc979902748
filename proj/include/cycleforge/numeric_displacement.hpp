#pragma once

#include "cycleforge/trajectory.hpp"

#include <optional>

namespace cycleforge::filippov {

struct HalfOrbit {
    Real radius = 0;                        // distance from the origin at the target angle
    std::vector<TrajectorySample> samples;  // polar-tracked arc (working coordinates)
};

/// Integrate one polynomial field from the switching-line point at angle
/// theta0 and radius rho until the accumulated polar angle (an extra ODE
/// state, d theta/dt = (x y' - y x')/r^2) reaches theta_target; the angle is
/// refined to an exact section hit by partial-step bisection.  backward
/// integrates the reversed field.  This deliberately ignores the Filippov
/// zone structure: it realizes the formal half-return maps, which stay
/// defined as virtual orbits even where the start point is not a crossing
/// point.  Throws StepFailure if the angle fails to reach the target within
/// t_max (e.g. a virtual orbit trapped around an off-origin equilibrium).
HalfOrbit half_orbit(const VectorField2& field, Real rho, Real theta0, Real theta_target,
                     bool backward, const ode::OdeOptions<Real>& ode, Real t_max = 200.0L,
                     bool keep_samples = false, Zone tag = Zone::upper);

enum class Section { automatic, positive_axis, negative_axis };

struct DisplacementOptions {
    Section section = Section::automatic;
    ode::OdeOptions<Real> ode{};
    Real t_max = 200.0L;

    DisplacementOptions() {
        ode.rtol = 1e-14L;
        ode.atol = 1e-18L;
    }
};

struct DisplacementResult {
    Real value = 0;
    int section_sign = +1;  // +1: anchored at (rho, 0); -1: at (-rho, 0)
};

/// Numeric displacement at radius rho.
///
/// On the positive section: integrate the upper half forward from (rho, 0)
/// to angle +pi giving Pi+(rho), the lower half backward to angle -pi giving
/// (Pi-)^{-1}(rho), and return Pi+ - (Pi-)^{-1} (the same orientation as the
/// symbolic series).  On the negative section the mirrored construction
/// Pi- - (Pi+)^{-1} keeps the sign meaning.  With `automatic`, the section
/// is moved to the axis side free of sliding/escaping points, so cycle
/// brackets may straddle a sliding segment on the other side.
DisplacementResult numeric_displacement(const NumericSystem& s, Real rho,
                                        const DisplacementOptions& opt = {});

/// The side choice made by Section::automatic for this system at radii up
/// to rho_max: +1 unless the positive semi-axis (0, rho_max] contains
/// non-crossing points and the negative one does not.
int pick_section(const NumericSystem& s, Real rho_max);

} // namespace cycleforge::filippov
