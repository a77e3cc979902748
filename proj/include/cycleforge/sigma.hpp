#pragma once

#include "cycleforge/numeric_system.hpp"

#include <vector>

namespace cycleforge::filippov {

enum class SigmaKind { crossing, sliding, escaping, tangency };

const char* sigma_kind_name(SigmaKind k);

/// Classification of one point (x, 0) of the switching line.  The normal
/// speeds are the y-components of the two fields there; crossing means the
/// product is strictly positive, sliding that both point toward the line,
/// escaping that both point away, tangency that either speed vanishes
/// within tau_tan relative to the field magnitude on its side.
struct SigmaClassification {
    Real x = 0;
    SigmaKind kind = SigmaKind::tangency;
    Real upper_normal_speed = 0;
    Real lower_normal_speed = 0;
};

inline constexpr Real kTangencyTolerance = 1e-12L;

SigmaClassification classify_point(const NumericSystem& s, Real x);

/// Filippov sliding velocity at (x, 0): x-component of the convex
/// combination lambda Z+ + (1-lambda) Z- whose y-component vanishes,
/// lambda = Y- / (Y- - Y+).  Throws NotSlidingRegion unless the point
/// classifies as sliding or escaping.
Real sliding_field(const NumericSystem& s, Real x);

/// lambda of the Filippov combination (no classification check).
Real sliding_lambda(const NumericSystem& s, Real x);

/// A maximal sliding or escaping interval of the switching line, bounded by
/// tangency points (roots of Y+ or Y- on the line).
struct SigmaSegment {
    Real lo = 0, hi = 0;
    SigmaKind kind = SigmaKind::sliding;
};

/// Locate sliding/escaping segments inside [lo, hi] by a sign-change scan of
/// Y+*Y- over a fixed grid followed by bisection refinement of the tangency
/// endpoints.
std::vector<SigmaSegment> find_sigma_segments(const NumericSystem& s, Real lo, Real hi,
                                              int samples = 2048);

} // namespace cycleforge::filippov
