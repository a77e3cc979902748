#pragma once

#include "cycleforge/errors.hpp"
#include "cycleforge/rational.hpp"

#include <numbers>
#include <string>

namespace cycleforge::exactalg {

/// Element of the subring Q + Q*pi, with pi kept as a formal transcendental
/// symbol.  Addition is componentwise.  A product is defined only when at
/// least one factor has zero pi-part; anything that would produce pi^2
/// throws PiOverflow instead of silently truncating.
struct PiScalar {
    Rational rat;  // rational part
    Rational pi;   // coefficient of pi

    PiScalar() = default;
    PiScalar(Rational r) : rat(std::move(r)) {}
    PiScalar(long n) : rat(n) {}
    PiScalar(Rational r, Rational p) : rat(std::move(r)), pi(std::move(p)) {}

    static PiScalar pi_times(Rational c) { return PiScalar(Rational(0), std::move(c)); }

    bool is_zero() const { return rat.is_zero() && pi.is_zero(); }
    bool is_rational() const { return pi.is_zero(); }

    PiScalar operator-() const { return PiScalar(-rat, -pi); }
    PiScalar& operator+=(const PiScalar& o) { rat += o.rat; pi += o.pi; return *this; }
    PiScalar& operator-=(const PiScalar& o) { rat -= o.rat; pi -= o.pi; return *this; }
    friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
    friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }

    friend PiScalar operator*(const PiScalar& a, const PiScalar& b) {
        if (!a.pi.is_zero() && !b.pi.is_zero()) throw PiOverflow();
        return PiScalar(a.rat * b.rat, a.rat * b.pi + a.pi * b.rat);
    }
    PiScalar& operator*=(const PiScalar& o) { return *this = *this * o; }

    /// Scale by a plain rational; always defined.
    PiScalar scaled(const Rational& c) const { return PiScalar(rat * c, pi * c); }

    /// Multiply by the symbol pi.  Throws PiOverflow if a pi-part is present.
    PiScalar times_pi() const {
        if (!pi.is_zero()) throw PiOverflow();
        return PiScalar(Rational(0), rat);
    }

    friend bool operator==(const PiScalar& a, const PiScalar& b) = default;

    double to_double() const {
        return rat.to_double() + pi.to_double() * std::numbers::pi_v<double>;
    }
    long double to_long_double() const {
        constexpr long double pi_ld = 3.14159265358979323846264338327950288L;
        return rat.to_long_double() + pi.to_long_double() * pi_ld;
    }

    /// Canonical text form used by reports and golden tests:
    ///   "p/q", "r/s*pi", "p/q + r/s*pi", "p/q - r/s*pi";
    /// denominator 1 printed as a bare integer, unit pi coefficient as "pi".
    std::string str() const;
};

} // namespace cycleforge::exactalg
