#include "cycleforge/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace cycleforge::exactalg {

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    const auto bad = [&] {
        return std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            mpz_class n(std::string(text), 10);
            return Rational(n);
        }
        if (slash == 0 || slash + 1 == text.size()) throw bad();
        mpz_class n(std::string(text.substr(0, slash)), 10);
        mpz_class d(std::string(text.substr(slash + 1)), 10);
        if (sgn(d) == 0) throw bad();
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

namespace {

// Mantissa-exponent split accurate to long double precision; avoids the
// 53-bit truncation of mpz_get_d and overflow for huge operands.
long double mpz_to_ld_2exp(const mpz_class& z, long& exp_out) {
    const int s = sgn(z);
    if (s == 0) {
        exp_out = 0;
        return 0.0L;
    }
    const mpz_class a = ::abs(z);
    const std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    long shift = 0;
    mpz_class top = a;
    if (bits > 128) {
        shift = static_cast<long>(bits - 128);
        top = a >> static_cast<unsigned long>(shift);
    }
    long double m = 0.0L;
    const std::size_t limbs = mpz_size(top.get_mpz_t());
    for (std::size_t i = limbs; i-- > 0;) {
        m = m * 18446744073709551616.0L /* 2^64 */ +
            static_cast<long double>(mpz_getlimbn(top.get_mpz_t(), static_cast<mp_size_t>(i)));
    }
    exp_out = shift;
    return s < 0 ? -m : m;
}

} // namespace

long double Rational::to_long_double() const {
    long en = 0, ed = 0;
    const long double mn = mpz_to_ld_2exp(numerator(), en);
    const long double md = mpz_to_ld_2exp(denominator(), ed);
    if (mn == 0.0L) return 0.0L;
    return std::ldexp(mn / md, static_cast<int>(en - ed));
}

std::string Rational::str() const {
    if (denominator() == 1) return numerator().get_str();
    return numerator().get_str() + "/" + denominator().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace cycleforge::exactalg
