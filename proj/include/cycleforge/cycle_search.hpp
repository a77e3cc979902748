#pragma once

#include "cycleforge/numeric_displacement.hpp"

#include <functional>
#include <optional>
#include <string>

namespace cycleforge::filippov {

struct CycleResult {
    Real rho = 0;            // section radius of the fixed point
    int section_sign = +1;   // axis side the radius is measured on
    Real residual = 0;       // |Delta(rho*)|
    Trajectory cycle;        // one closed loop, two crossing events
    Real closure_error = 0;  // |end - start| of the re-integrated loop
    bool stable = false;     // sign of d Delta / d rho at the fixed point
};

struct CycleSearchOptions {
    int grid = 24;               // displacement samples across the bracket
    Real residual_tol = 1e-10L;  // |Delta(rho*)| target
    DisplacementOptions displacement{};
};

/// Locate a crossing limit cycle with section radius in [lo, hi]: sample the
/// displacement over a grid (skipping radii where the virtual half-orbits
/// fail, e.g. inside a sliding segment), bracket a sign change, bisect to
/// |Delta| <= residual_tol, then re-integrate the full Filippov loop through
/// the fixed point.  Throws NoSignChange when no bracket exists.
CycleResult find_crossing_cycle(const NumericSystem& s, Real lo, Real hi,
                                const CycleSearchOptions& opt = {});

/// One row of the pseudo-Hopf scan table.
struct PseudoHopfRow {
    Real eps = 0;
    bool has_segment = false;
    Real seg_lo = 0, seg_hi = 0;       // working coordinates
    SigmaKind seg_kind = SigmaKind::crossing;
    bool has_cycle = false;
    Real cycle_rho = 0;
    bool cycle_stable = false;
};

/// Scan an epsilon family of systems (produced by the callback) across a
/// range straddling zero: per epsilon, the sliding-segment endpoints (roots
/// of the normal speeds on the line), the segment kind, and a cycle search
/// with a bracket grown from the segment size.  Rows are computed
/// independently (fanned out across the thread budget) and reported in grid
/// order.
std::vector<PseudoHopfRow> pseudo_hopf_scan(const std::function<NumericSystem(Real)>& family,
                                            Real eps_lo, Real eps_hi, int steps,
                                            Real search_radius = 1.0L);

} // namespace cycleforge::filippov
