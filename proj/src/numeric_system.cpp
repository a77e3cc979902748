#include "cycleforge/numeric_system.hpp"

#include <cmath>

namespace cycleforge::filippov {

Poly2 Poly2::from_monomials(const std::vector<std::tuple<int, int, Real>>& mono) {
    int nx = 1, ny = 1;
    for (const auto& [k, l, c] : mono) {
        nx = std::max(nx, k + 1);
        ny = std::max(ny, l + 1);
    }
    Poly2 p(nx, ny);
    for (const auto& [k, l, c] : mono) p.at(k, l) += c;
    return p;
}

Poly2 Poly2::scaled(Real s) const {
    Poly2 r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 r(std::max(a.nx_, b.nx_), std::max(a.ny_, b.ny_));
    for (int k = 0; k < a.nx_; ++k)
        for (int l = 0; l < a.ny_; ++l) r.at(k, l) += a.at(k, l);
    for (int k = 0; k < b.nx_; ++k)
        for (int l = 0; l < b.ny_; ++l) r.at(k, l) += b.at(k, l);
    return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r(a.nx_ + b.nx_ - 1, a.ny_ + b.ny_ - 1);
    for (int k = 0; k < a.nx_; ++k)
        for (int l = 0; l < a.ny_; ++l) {
            const Real av = a.at(k, l);
            if (av == 0.0L) continue;
            for (int m = 0; m < b.nx_; ++m)
                for (int n = 0; n < b.ny_; ++n) r.at(k + m, l + n) += av * b.at(m, n);
        }
    return r;
}

Poly2 Poly2::affine_substituted(Real b11, Real b12, Real b21, Real b22, Real tx, Real ty) const {
    Poly2 xs(2, 2), ys(2, 2);
    xs.at(0, 0) = tx; xs.at(1, 0) = b11; xs.at(0, 1) = b12;
    ys.at(0, 0) = ty; ys.at(1, 0) = b21; ys.at(0, 1) = b22;
    Poly2 acc(1, 1);
    for (int k = 0; k < nx_; ++k)
        for (int l = 0; l < ny_; ++l) {
            const Real cv = at(k, l);
            if (cv == 0.0L) continue;
            Poly2 t(1, 1);
            t.at(0, 0) = cv;
            for (int i = 0; i < k; ++i) t = t * xs;
            for (int j = 0; j < l; ++j) t = t * ys;
            acc = acc + t;
        }
    return acc;
}

NumericSystem make_numeric(const RawPiecewiseField& raw) {
    NumericSystem s;
    s.upper = {Poly2::from_monomials(raw.up_dx), Poly2::from_monomials(raw.up_dy)};
    s.lower = {Poly2::from_monomials(raw.lo_dx), Poly2::from_monomials(raw.lo_dy)};
    return s;
}

namespace {

struct Jac {
    Real a, b, c, d;
};

Jac jacobian_at_origin(const VectorField2& f) {
    // linear coefficients of the (already translated) field
    const auto lin = [](const Poly2& p, bool wrt_x) {
        return wrt_x ? (p.xdeg() >= 1 ? p.at(1, 0) : 0.0L) : (p.ydeg() >= 1 ? p.at(0, 1) : 0.0L);
    };
    return {lin(f.fx, true), lin(f.fx, false), lin(f.fy, true), lin(f.fy, false)};
}

Real field_scale(const Jac& j) {
    return std::max({std::fabs((double)j.a), std::fabs((double)j.b), std::fabs((double)j.c),
                     std::fabs((double)j.d), 1.0}) *
           1.0L;
}

} // namespace

NumericSystem normalize_numeric(const RawPiecewiseField& raw, Real cx, Real cy) {
    // translate both fields so the center sits at the origin
    VectorField2 up{Poly2::from_monomials(raw.up_dx).affine_substituted(1, 0, 0, 1, cx, cy),
                    Poly2::from_monomials(raw.up_dy).affine_substituted(1, 0, 0, 1, cx, cy)};
    VectorField2 lo{Poly2::from_monomials(raw.lo_dx).affine_substituted(1, 0, 0, 1, cx, cy),
                    Poly2::from_monomials(raw.lo_dy).affine_substituted(1, 0, 0, 1, cx, cy)};

    const Real tol = 1e-9L;
    const auto qualifies = [&](const VectorField2& f, Jac& out) {
        const Real c0x = f.fx.eval<Real>(0.0L, 0.0L);
        const Real c0y = f.fy.eval<Real>(0.0L, 0.0L);
        out = jacobian_at_origin(f);
        const Real scale = field_scale(out);
        if (std::fabs((double)c0x) > tol * scale || std::fabs((double)c0y) > tol * scale)
            return false;
        return std::fabs((double)(out.a + out.d)) <= tol * scale && out.a * out.d - out.b * out.c > 0.0L;
    };

    Jac J{};
    if (!qualifies(lo, J) && !qualifies(up, J))
        throw NotACenter("neither side has a linear-center Jacobian at the given center point");

    const Real omega = std::sqrt(J.a * J.d - J.b * J.c);
    // B = [(1,0) | J(1,0)/omega]; w-axis is c/omega * y, so sides swap when c < 0
    const Real b12 = J.a / omega, b22 = J.c / omega;

    const auto transform = [&](const VectorField2& f) {
        // (u', w') = B^-1 f(B(u,w)) / omega with B = [[1, b12],[0, b22]]
        Poly2 fx = f.fx.affine_substituted(1, b12, 0, b22, 0, 0);
        Poly2 fy = f.fy.affine_substituted(1, b12, 0, b22, 0, 0);
        Poly2 du = (fx + fy.scaled(-b12 / b22)).scaled(1.0L / omega);
        Poly2 dw = fy.scaled(1.0L / (b22 * omega));
        return VectorField2{std::move(du), std::move(dw)};
    };

    NumericSystem s;
    const bool swap = b22 < 0.0L;
    s.upper = transform(swap ? lo : up);
    s.lower = transform(swap ? up : lo);
    CoordinateMap map;
    map.b11 = 1; map.b12 = b12; map.b21 = 0; map.b22 = b22;
    map.cx = cx; map.cy = cy;
    map.omega = omega;
    map.side_swap = swap;
    s.back = map;
    return s;
}

NumericSystem instantiate(const lyapunov::PiecewiseSystem<exactalg::ParamJet>& sys,
                          const std::vector<exactalg::Rational>& values) {
    const auto to_mono = [&](const lyapunov::PlanarPoly<exactalg::ParamJet>& p) {
        std::vector<std::tuple<int, int, Real>> mono;
        for (const auto& [k, c] : p.monomials()) {
            const exactalg::PiScalar v = c.at(values);
            mono.emplace_back(k.first, k.second, v.to_long_double());
        }
        return mono;
    };
    RawPiecewiseField raw;
    raw.up_dx = to_mono(sys.upper.dx());
    raw.up_dy = to_mono(sys.upper.dy());
    raw.lo_dx = to_mono(sys.lower.dx());
    raw.lo_dy = to_mono(sys.lower.dy());
    return make_numeric(raw);
}

} // namespace cycleforge::filippov
