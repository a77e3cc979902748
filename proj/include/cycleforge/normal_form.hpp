#pragma once

#include "cycleforge/half_system.hpp"

#include <optional>

namespace cycleforge::lyapunov {

/// Affine change of coordinates produced by to_normal_form:
///   (x, y) = B (u, w) + (cx, cy),   B = [v | Jv/omega],  v = (1, 0),
/// followed by the time rescale tau = omega * t.  side_swap records whether
/// B maps the upper half-plane {y > 0} onto {w < 0}, i.e. whether the two
/// half-systems trade places in the new coordinates.
template <class K>
struct NormalFormRecord {
    K cx{}, cy{};
    K b11{}, b12{}, b21{}, b22{};
    K omega{};
    bool side_swap = false;

    std::pair<K, K> to_original(const K& u, const K& w) const {
        return {b11 * u + b12 * w + cx, b21 * u + b22 * w + cy};
    }
    std::pair<K, K> from_original(const K& x, const K& y) const {
        const K dx = x - cx, dy = y - cy;
        const K det = b11 * b22 - b12 * b21;
        return {(b22 * dx - b12 * dy) / det, (b11 * dy - b21 * dx) / det};
    }

    static NormalFormRecord identity() {
        NormalFormRecord r;
        r.b11 = K(1); r.b22 = K(1); r.omega = K(1);
        return r;
    }
};

template <class K>
struct NormalFormResult {
    PlanarPoly<K> dx, dy;
    NormalFormRecord<K> record;
};

namespace detail {

/// Exact square root of a non-negative rational, if it exists.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    if (r.is_zero()) return Rational(0);
    mpz_class sn, sd;
    if (!mpz_perfect_square_p(r.numerator().get_mpz_t()) ||
        !mpz_perfect_square_p(r.denominator().get_mpz_t()))
        return std::nullopt;
    mpz_sqrt(sn.get_mpz_t(), r.numerator().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), r.denominator().get_mpz_t());
    return Rational(sn, sd);
}

} // namespace detail

/// Translate the equilibrium to the origin, rotate/scale the linear part to
/// [[0, -omega], [omega, 0]] with the basis {v, Jv/omega}, v = (1, 0), and
/// rescale time by 1/omega so the linear part is exactly [[0, -1], [1, 0]].
///
/// The first basis vector is pinned to (1, 0) so the switching line y = 0
/// stays the horizontal axis; this never degenerates, because J21 = 0
/// together with zero trace forces det <= 0, which the center check
/// rejects first.
///
/// Throws NotACenter when the point is not an equilibrium or the Jacobian
/// has nonzero trace / non-positive determinant, and NormalFormError when
/// omega = sqrt(det) is irrational (no exact rational normalization).
inline NormalFormResult<Rational> to_normal_form(const PlanarPoly<Rational>& dx,
                                                 const PlanarPoly<Rational>& dy,
                                                 const Rational& ex, const Rational& ey) {
    PlanarPoly<Rational> sdx = dx.shifted(ex, ey);
    PlanarPoly<Rational> sdy = dy.shifted(ex, ey);
    if (!sdx.coefficient(0, 0).is_zero() || !sdy.coefficient(0, 0).is_zero())
        throw NotACenter("(" + ex.str() + ", " + ey.str() + ") is not an equilibrium");

    const Rational a = sdx.coefficient(1, 0), b = sdx.coefficient(0, 1);
    const Rational c = sdy.coefficient(1, 0), d = sdy.coefficient(0, 1);
    if (!(a + d).is_zero())
        throw NotACenter("Jacobian trace " + (a + d).str() + " is nonzero");
    const Rational det = a * d - b * c;
    if (det.sign() <= 0)
        throw NotACenter("Jacobian determinant " + det.str() + " is not positive");

    const auto omega = detail::rational_sqrt(det);
    if (!omega)
        throw NormalFormError("omega^2 = " + det.str() +
                              " has no rational square root; exact normalization unavailable");

    NormalFormRecord<Rational> rec;
    rec.cx = ex; rec.cy = ey;
    rec.b11 = Rational(1); rec.b12 = a / *omega;
    rec.b21 = Rational(0); rec.b22 = c / *omega;
    rec.omega = *omega;
    rec.side_swap = c.sign() < 0;

    // u' = (dx - (a/c) dy)/omega,  w' = dy/c   (B^-1 followed by 1/omega)
    PlanarPoly<Rational> tdx = sdx.substituted(rec.b11, rec.b12, rec.b21, rec.b22);
    PlanarPoly<Rational> tdy = sdy.substituted(rec.b11, rec.b12, rec.b21, rec.b22);
    PlanarPoly<Rational> ndx = (tdx - tdy.scaled(a / c)).scaled(Rational(1) / *omega);
    PlanarPoly<Rational> ndy = tdy.scaled(Rational(1) / c);

    if (!(ndx.coefficient(0, 1) == Rational(-1)) || !ndx.coefficient(1, 0).is_zero() ||
        !(ndy.coefficient(1, 0) == Rational(1)) || !ndy.coefficient(0, 1).is_zero())
        throw NormalFormError("normalization did not reach the exact linear center form");

    return {std::move(ndx), std::move(ndy), std::move(rec)};
}

} // namespace cycleforge::lyapunov
