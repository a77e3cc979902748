#include "cycleforge/sigma.hpp"

#include <cmath>

namespace cycleforge::filippov {

const char* sigma_kind_name(SigmaKind k) {
    switch (k) {
        case SigmaKind::crossing: return "crossing";
        case SigmaKind::sliding: return "sliding";
        case SigmaKind::escaping: return "escaping";
        case SigmaKind::tangency: return "tangency";
    }
    return "?";
}

SigmaClassification classify_point(const NumericSystem& s, Real x) {
    SigmaClassification c;
    c.x = x;
    const auto up = s.upper.eval<Real>(x, 0.0L);
    const auto lo = s.lower.eval<Real>(x, 0.0L);
    c.upper_normal_speed = up[1];
    c.lower_normal_speed = lo[1];

    const Real up_scale = std::max<Real>(std::hypot((double)up[0], (double)up[1]), 1e-300L);
    const Real lo_scale = std::max<Real>(std::hypot((double)lo[0], (double)lo[1]), 1e-300L);
    const bool up_tan = std::fabs((double)up[1]) <= kTangencyTolerance * up_scale;
    const bool lo_tan = std::fabs((double)lo[1]) <= kTangencyTolerance * lo_scale;

    if (up_tan || lo_tan) c.kind = SigmaKind::tangency;
    else if (c.upper_normal_speed * c.lower_normal_speed > 0.0L) c.kind = SigmaKind::crossing;
    else if (c.upper_normal_speed < 0.0L) c.kind = SigmaKind::sliding;   // both toward the line
    else c.kind = SigmaKind::escaping;                                   // both away
    return c;
}

Real sliding_lambda(const NumericSystem& s, Real x) {
    const Real yu = s.upper.fy.eval<Real>(x, 0.0L);
    const Real yl = s.lower.fy.eval<Real>(x, 0.0L);
    return yl / (yl - yu);
}

Real sliding_field(const NumericSystem& s, Real x) {
    const auto c = classify_point(s, x);
    if (c.kind != SigmaKind::sliding && c.kind != SigmaKind::escaping)
        throw NotSlidingRegion("(" + std::to_string((double)x) +
                               ", 0) is not in the sliding/escaping set");
    const Real xu = s.upper.fx.eval<Real>(x, 0.0L);
    const Real xl = s.lower.fx.eval<Real>(x, 0.0L);
    const Real lam = sliding_lambda(s, x);
    return lam * xu + (1.0L - lam) * xl;
}

std::vector<SigmaSegment> find_sigma_segments(const NumericSystem& s, Real lo, Real hi,
                                              int samples) {
    std::vector<SigmaSegment> out;
    if (!(hi > lo) || samples < 2) return out;

    const auto product = [&](Real x) {
        return s.upper.fy.eval<Real>(x, 0.0L) * s.lower.fy.eval<Real>(x, 0.0L);
    };
    const auto refine = [&](Real a, Real b) {  // sign change of product in [a, b]
        Real pa = product(a);
        for (int i = 0; i < 200 && b - a > 0.0L; ++i) {
            const Real m = a + (b - a) / 2.0L;
            const Real pm = product(m);
            if ((pa < 0.0L) == (pm < 0.0L)) { a = m; pa = pm; }
            else b = m;
            if (b - a < 1e-18L * std::max<Real>(1.0L, std::fabs((double)a))) break;
        }
        return (a + b) / 2.0L;
    };

    const Real h = (hi - lo) / samples;
    Real prev_x = lo;
    Real prev_p = product(lo);
    Real seg_start = 0;
    bool in_seg = prev_p < 0.0L;
    if (in_seg) seg_start = lo;
    for (int i = 1; i <= samples; ++i) {
        const Real x = lo + h * i;
        const Real p = product(x);
        const bool neg = p < 0.0L;
        if (neg != in_seg) {
            const Real b = refine(prev_x, x);
            if (neg) seg_start = b;
            else {
                SigmaSegment seg;
                seg.lo = seg_start;
                seg.hi = b;
                seg.kind = classify_point(s, (seg.lo + seg.hi) / 2.0L).kind;
                out.push_back(seg);
            }
            in_seg = neg;
        }
        prev_x = x;
        prev_p = p;
    }
    if (in_seg) {
        SigmaSegment seg;
        seg.lo = seg_start;
        seg.hi = hi;
        seg.kind = classify_point(s, (seg.lo + seg.hi) / 2.0L).kind;
        out.push_back(seg);
    }
    return out;
}

} // namespace cycleforge::filippov
