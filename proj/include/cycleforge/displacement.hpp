#pragma once

#include "cycleforge/half_system.hpp"
#include "cycleforge/quasitrig.hpp"

#include <future>
#include <vector>

namespace cycleforge::lyapunov {

using trigseries::Abscissa;
using trigseries::QuasiTrigPoly;
using trigseries::TrigKind;
using exactalg::ParamJet;
using exactalg::PiScalar;

enum class HalfDirection { forward_0_to_pi, backward_0_to_minus_pi };

/// Truncated power series in the radius r with quasi-trig coefficients;
/// coef[i] multiplies r^i.
template <class C>
struct RadialSeries {
    std::vector<QuasiTrigPoly<C>> coef;

    int order() const { return static_cast<int>(coef.size()) - 1; }
    const QuasiTrigPoly<C>& operator[](std::size_t i) const { return coef[i]; }
};

namespace detail {

/// cos^k(theta) sin^l(theta) expanded into harmonics, with memoization.
/// Exponents stay tiny (bounded by the polynomial degree plus one).
const QuasiTrigPoly<Rational>& cos_sin_power(int k, int l);

} // namespace detail

/// Expand dr/dtheta = [cos P + sin Q] / [1 + (cos Q - sin P)/r] of a
/// normal-form half system as sum_{i=2..N} R_i(theta) r^i.  The R_i are
/// plain trigonometric polynomials (theta power 0).
template <class C>
RadialSeries<C> polar_expansion(const HalfSystem<C>& h, int order) {
    using QTP = QuasiTrigPoly<C>;
    const PlanarPoly<C> P = h.nonlinear_p();
    const PlanarPoly<C> Q = h.nonlinear_q();

    // A_d = cos*P_d + sin*Q_d and B_d = cos*Q_d - sin*P_d, both harmonics of
    // the degree-d parts under x = r cos, y = r sin.
    const int deg = std::max(P.degree(), Q.degree());
    std::vector<QTP> A(static_cast<std::size_t>(deg) + 1), B(static_cast<std::size_t>(deg) + 1);
    for (const auto& [k, c] : P.monomials()) {
        const int d = k.first + k.second;
        A[d] += detail::cos_sin_power(k.first + 1, k.second).lifted(c);
        B[d] -= detail::cos_sin_power(k.first, k.second + 1).lifted(c);
    }
    for (const auto& [k, c] : Q.monomials()) {
        const int d = k.first + k.second;
        A[d] += detail::cos_sin_power(k.first, k.second + 1).lifted(c);
        B[d] += detail::cos_sin_power(k.first + 1, k.second).lifted(c);
    }

    // Series division R (1 + B/r) = A, collecting powers of r:
    //   R_i = A_i - sum_{e>=1} B_{e+1} R_{i-e}.
    RadialSeries<C> R;
    R.coef.assign(static_cast<std::size_t>(order) + 1, QTP{});
    for (int i = 2; i <= order; ++i) {
        QTP acc = i <= deg ? A[static_cast<std::size_t>(i)] : QTP{};
        for (int e = 1; e <= deg - 1 && i - e >= 2; ++e)
            acc -= B[static_cast<std::size_t>(e + 1)] * R.coef[static_cast<std::size_t>(i - e)];
        R.coef[static_cast<std::size_t>(i)] = std::move(acc);
    }
    return R;
}

/// Solve the radial recursion: substituting r(theta, rho) = rho + sum r_i rho^i
/// into dr/dtheta = sum R_i r^i and matching powers of rho gives, for each i,
/// a quadrature r_i' = (forcing in r_2..r_{i-1}) with r_i(0) = 0.  The
/// returned functions are the same formal solutions for either direction;
/// the direction only selects the endpoint evaluated later.
template <class C>
RadialSeries<C> solve_radial_coefficients(const RadialSeries<C>& R, int order) {
    using QTP = QuasiTrigPoly<C>;
    RadialSeries<C> r;
    r.coef.assign(static_cast<std::size_t>(order) + 1, QTP{});

    // v = sum_{j>=2} r_j rho^{j-1}; vpow[m][e] = [rho^e] v^m.  Extended
    // incrementally as each r_k becomes available, so every product uses
    // only finished coefficients.
    std::vector<std::vector<QTP>> vpow;
    vpow.push_back({});  // placeholder for m = 0 (unused)
    vpow.push_back(std::vector<QTP>(static_cast<std::size_t>(order), QTP{}));  // v^1

    for (int k = 2; k <= order; ++k) {
        // forcing = sum_{i=2..k} R_i [rho^k] (rho + sum r_j rho^j)^i
        //         = R_k + sum_{i=2..k-1} R_i sum_m C(i, m) vpow[m][k-i]
        QTP forcing = R.coef[static_cast<std::size_t>(k)];
        for (int i = 2; i <= k - 1; ++i) {
            if (R.coef[static_cast<std::size_t>(i)].is_zero()) continue;
            QTP inner;
            for (int m = 1; m <= k - i && m < static_cast<int>(vpow.size()); ++m)
                inner += vpow[static_cast<std::size_t>(m)][static_cast<std::size_t>(k - i)]
                             .scaled(exactalg::binomial(static_cast<unsigned>(i),
                                                        static_cast<unsigned>(m)));
            forcing += R.coef[static_cast<std::size_t>(i)] * inner;
        }
        r.coef[static_cast<std::size_t>(k)] = forcing.antiderivative();

        // extend the v powers with the fresh coefficient at rho^{k-1}
        const int e = k - 1;
        vpow[1][static_cast<std::size_t>(e)] = r.coef[static_cast<std::size_t>(k)];
        for (int m = 2; m <= e; ++m) {
            if (static_cast<int>(vpow.size()) <= m)
                vpow.push_back(std::vector<QTP>(static_cast<std::size_t>(order), QTP{}));
            QTP acc;
            for (int f = m - 1; f <= e - 1; ++f) {
                const QTP& lhs = vpow[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(f)];
                const QTP& rhs = vpow[1][static_cast<std::size_t>(e - f)];
                if (!lhs.is_zero() && !rhs.is_zero()) acc += lhs * rhs;
            }
            vpow[static_cast<std::size_t>(m)][static_cast<std::size_t>(e)] = std::move(acc);
        }
    }
    return r;
}

/// Coefficients of the difference map Delta(rho) = sum L_i rho^i, i >= 2.
/// Storage is indexed by the rho power; the accessor uses the paper-style
/// labels in which L(k) is the coefficient of rho^{k+1}, so the first three
/// printed constants of the reference systems land at L(1), L(2), L(3).
class DisplacementSeries {
public:
    DisplacementSeries() = default;
    explicit DisplacementSeries(std::vector<ParamJet> coef) : coef_(std::move(coef)) {}

    /// Truncation order N: coefficients of rho^2 .. rho^N are present.
    int order() const { return static_cast<int>(coef_.size()) + 1; }

    /// Coefficient of rho^i, 2 <= i <= order().
    const ParamJet& rho_coefficient(int i) const { return coef_.at(static_cast<std::size_t>(i - 2)); }

    /// Paper-style label: L(k) = coefficient of rho^{k+1}, 1 <= k <= order()-1.
    const ParamJet& L(int k) const { return rho_coefficient(k + 1); }

    const std::vector<ParamJet>& coefficients() const { return coef_; }

private:
    std::vector<ParamJet> coef_;
};

/// Endpoint of the half-return series for a direction: theta = pi for the
/// forward (upper) passage, theta = -pi for the backward (lower) one.
inline Abscissa half_return_endpoint(HalfDirection d) {
    return d == HalfDirection::forward_0_to_pi ? Abscissa::pi : Abscissa::minus_pi;
}

/// Series coefficients of one half-return map: r_i(endpoint), i = 2..N.
std::vector<ParamJet> half_return_series(const HalfSystem<ParamJet>& h, int order,
                                         HalfDirection direction);

/// Generalized Lyapunov constants of the piecewise system, to rho^order.
///
/// Orientation: the i-th coefficient is r_i^+(pi) - r_i^-(-pi), i.e. the
/// difference map is taken as Pi^+ - (Pi^-)^{-1}; positive values mean the
/// upper half-map dominates and the origin repels.  This is the sign the
/// reference constants are printed in.  The two halves are evaluated
/// concurrently when a thread budget allows.
DisplacementSeries displacement_series(const PiecewiseSystem<ParamJet>& s, int order);

/// Add jet-valued monomials a_{kl} x^k y^l to dx and b_{kl} x^k y^l to dy on
/// each side, 2 <= k+l <= degree, with the canonical ParamSet ordering.
PiecewiseSystem<ParamJet> attach_perturbation(const HalfSystem<Rational>& upper,
                                              const HalfSystem<Rational>& lower, int degree);

/// Lift a parameter-free pair into the jet ring with an empty ParamSet.
PiecewiseSystem<ParamJet> lift_piecewise(const HalfSystem<Rational>& upper,
                                         const HalfSystem<Rational>& lower);

} // namespace cycleforge::lyapunov
