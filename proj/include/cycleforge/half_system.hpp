#pragma once

#include "cycleforge/errors.hpp"
#include "cycleforge/paramset.hpp"
#include "cycleforge/planar_poly.hpp"

namespace cycleforge::lyapunov {

using exactalg::ParamSet;
using exactalg::Side;

namespace detail {

template <class C>
bool equals_rational(const C& c, long v) {
    if constexpr (std::is_same_v<C, Rational>) return c == Rational(v);
    else return c == C(Rational(v));
}

} // namespace detail

/// One half of a piecewise system in normal form:
///   dx = -y + P(x, y),  dy = x + Q(x, y),
/// with P, Q free of constant and linear terms.  The constructor verifies
/// the linear part exactly.
template <class C>
class HalfSystem {
public:
    HalfSystem(PlanarPoly<C> dx, PlanarPoly<C> dy, Side side)
        : dx_(std::move(dx)), dy_(std::move(dy)), side_(side) {
        verify_normal_form();
    }

    const PlanarPoly<C>& dx() const { return dx_; }
    const PlanarPoly<C>& dy() const { return dy_; }
    Side side() const { return side_; }

    /// P = dx + y and Q = dy - x: the nonlinear remainders.
    PlanarPoly<C> nonlinear_p() const {
        PlanarPoly<C> p = dx_;
        p.add_term(0, 1, C(Rational(1)));
        return p;
    }
    PlanarPoly<C> nonlinear_q() const {
        PlanarPoly<C> q = dy_;
        q.add_term(1, 0, C(Rational(-1)));
        return q;
    }

private:
    void verify_normal_form() const {
        const bool ok = detail::equals_rational(dx_.coefficient(0, 1), -1) &&
                        dx_.coefficient(1, 0).is_zero() && dx_.coefficient(0, 0).is_zero() &&
                        detail::equals_rational(dy_.coefficient(1, 0), 1) &&
                        dy_.coefficient(0, 1).is_zero() && dy_.coefficient(0, 0).is_zero();
        if (!ok)
            throw NormalFormError(
                "half system is not in normal form (need dx = -y + O(2), dy = x + O(2))");
    }

    PlanarPoly<C> dx_, dy_;
    Side side_;
};

/// Two polynomial half-systems split by the switching line y = 0, plus the
/// perturbation-parameter set shared by their jet coefficients.
template <class C>
struct PiecewiseSystem {
    HalfSystem<C> upper;
    HalfSystem<C> lower;
    ParamSet params;
};

} // namespace cycleforge::lyapunov
