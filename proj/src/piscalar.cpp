#include "cycleforge/piscalar.hpp"

namespace cycleforge::exactalg {

namespace {

std::string pi_term(const Rational& c) {
    if (c.is_one()) return "pi";
    if (c == Rational(-1)) return "-pi";
    return c.str() + "*pi";
}

} // namespace

std::string PiScalar::str() const {
    if (is_zero()) return "0";
    if (pi.is_zero()) return rat.str();
    if (rat.is_zero()) return pi_term(pi);
    if (pi.sign() < 0) return rat.str() + " - " + pi_term(-pi);
    return rat.str() + " + " + pi_term(pi);
}

} // namespace cycleforge::exactalg
