#pragma once

#include "cycleforge/errors.hpp"
#include "cycleforge/half_system.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cycleforge::filippov {

/// Working precision of the simulator.  Extended precision keeps the
/// series-versus-numeric oracles far above the noise floor; CLI output is
/// narrowed to double at the printing boundary.
using Real = long double;

/// Dense bivariate polynomial with Real coefficients, evaluated by nested
/// Horner in y then x.  Small fixed degrees; value semantics.
class Poly2 {
public:
    Poly2() : nx_(1), ny_(1), c_(1, 0.0L) {}
    Poly2(int nx, int ny) : nx_(nx), ny_(ny), c_(static_cast<std::size_t>(nx * ny), 0.0L) {}

    static Poly2 from_monomials(const std::vector<std::tuple<int, int, Real>>& mono);

    Real& at(int k, int l) { return c_[static_cast<std::size_t>(k * ny_ + l)]; }
    Real at(int k, int l) const { return c_[static_cast<std::size_t>(k * ny_ + l)]; }
    int xdeg() const { return nx_ - 1; }
    int ydeg() const { return ny_ - 1; }

    template <class S>
    S eval(const S& x, const S& y) const {
        S acc{};
        for (int k = nx_ - 1; k >= 0; --k) {
            S row{};
            for (int l = ny_ - 1; l >= 0; --l)
                row = row * y + S(c_[static_cast<std::size_t>(k * ny_ + l)]);
            acc = acc * x + row;
        }
        return acc;
    }

    /// Restriction to the switching line: p(x, 0) as coefficients in x.
    std::vector<Real> on_axis() const {
        std::vector<Real> v(static_cast<std::size_t>(nx_));
        for (int k = 0; k < nx_; ++k) v[static_cast<std::size_t>(k)] = at(k, 0);
        return v;
    }

    Poly2 scaled(Real s) const;
    friend Poly2 operator+(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(const Poly2& a, const Poly2& b);

    /// p(b11 u + b12 w + tx, b21 u + b22 w + ty): affine substitution, used
    /// by the numeric normalization.
    Poly2 affine_substituted(Real b11, Real b12, Real b21, Real b22, Real tx, Real ty) const;

private:
    int nx_, ny_;
    std::vector<Real> c_;
};

struct VectorField2 {
    Poly2 fx, fy;

    template <class S>
    std::array<S, 2> eval(const S& x, const S& y) const {
        return {fx.eval(x, y), fy.eval(x, y)};
    }
};

/// Affine change back to the input coordinate frame:
/// (x, y) = B (u, w) + (cx, cy), original time = tau / omega.
struct CoordinateMap {
    Real b11 = 1, b12 = 0, b21 = 0, b22 = 1;
    Real cx = 0, cy = 0;
    Real omega = 1;
    bool side_swap = false;

    std::array<Real, 2> to_original(Real u, Real w) const {
        return {b11 * u + b12 * w + cx, b21 * u + b22 * w + cy};
    }
    std::array<Real, 2> from_original(Real x, Real y) const {
        const Real dx = x - cx, dy = y - cy, det = b11 * b22 - b12 * b21;
        return {(b22 * dx - b12 * dy) / det, (b11 * dy - b21 * dx) / det};
    }
};

/// Two float-coefficient polynomial fields split by the line y = 0, in the
/// working coordinates of the simulator.  When the system was normalized
/// from a `center` directive, `back` maps working coordinates to the
/// original frame ("upper"/"lower" always refer to the working frame; the
/// map records whether they were swapped).
struct NumericSystem {
    VectorField2 upper, lower;
    std::optional<CoordinateMap> back;

    const VectorField2& side(bool up) const { return up ? upper : lower; }
};

/// Raw monomial form of one piecewise field, before any normalization.
struct RawPiecewiseField {
    // (k, l, coefficient) triples per equation and side
    std::vector<std::tuple<int, int, Real>> up_dx, up_dy, lo_dx, lo_dy;
};

/// Assemble a numeric system in the given coordinates (switching line y=0).
NumericSystem make_numeric(const RawPiecewiseField& raw);

/// Translate the center to the origin and bring the linear part of the
/// reference side to [[0,-1],[1,0]] (basis {(1,0), Jv/omega}, time scale
/// 1/omega), applying the same map to both fields and swapping the halves
/// when the map reverses the sign of y.  The reference side is the first of
/// {lower, upper} whose Jacobian at the center has (numerically) zero trace
/// and positive determinant.  Throws NotACenter when neither qualifies.
NumericSystem normalize_numeric(const RawPiecewiseField& raw, Real cx, Real cy);

/// Instantiate the jet-valued symbolic system at a concrete first-order
/// parameter assignment (the field itself is affine in the parameters, so
/// this is exact).  Assignment entries are indexed by parameter id.
NumericSystem instantiate(const lyapunov::PiecewiseSystem<exactalg::ParamJet>& s,
                          const std::vector<exactalg::Rational>& values);

} // namespace cycleforge::filippov
