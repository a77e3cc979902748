#pragma once

#include "cycleforge/errors.hpp"
#include "cycleforge/paramjet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace cycleforge::trigseries {

using exactalg::ParamJet;
using exactalg::PiScalar;
using exactalg::Rational;

enum class TrigKind : std::uint8_t { cos = 0, sin = 1 };

/// Term key theta^k * cos(j theta) / sin(j theta).  (k, 0, cos) is the pure
/// power theta^k; sin with j = 0 is forbidden.  Keys order lexicographically
/// by (k, j, kind), which is also the canonical print order.
struct TrigKey {
    std::uint16_t tpow;
    std::uint16_t harm;
    TrigKind kind;

    friend bool operator==(const TrigKey&, const TrigKey&) = default;
    friend bool operator<(const TrigKey& a, const TrigKey& b) {
        return std::tuple(a.tpow, a.harm, a.kind) < std::tuple(b.tpow, b.harm, b.kind);
    }
};

/// The exact abscissae at which endpoint evaluation stays in Q + Q*pi.
enum class Abscissa { zero, pi, minus_pi, two_pi };

namespace detail {

inline void coeff_scale(Rational& c, const Rational& s) { c *= s; }
inline void coeff_scale(PiScalar& c, const Rational& s) { c = c.scaled(s); }
inline void coeff_scale(ParamJet& c, const Rational& s) { c = c.scaled(s); }

inline double coeff_to_double(const Rational& c) { return c.to_double(); }
inline double coeff_to_double(const PiScalar& c) { return c.to_double(); }

// Evaluation at the exact abscissae promotes Rational coefficients into
// PiScalar; PiScalar and ParamJet evaluate into themselves.
template <class C> struct PiPromote { using type = C; };
template <> struct PiPromote<Rational> { using type = PiScalar; };

inline PiScalar promote(const Rational& c) { return PiScalar(c); }
inline const PiScalar& promote(const PiScalar& c) { return c; }
inline const ParamJet& promote(const ParamJet& c) { return c; }

inline PiScalar times_pi(const PiScalar& c) { return c.times_pi(); }
inline ParamJet times_pi(const ParamJet& c) { return c.times_pi(); }

} // namespace detail

/// Finite sum of terms theta^k cos(j theta), theta^k sin(j theta) with
/// coefficients in a ring C (Rational, PiScalar, or ParamJet).  Closed under
/// product, derivative and antiderivative; this is where the radial
/// coefficients r_i(theta) live.  Values are immutable in spirit: every
/// operation returns a fresh canonical polynomial (term list sorted by key,
/// no zero coefficients, harmonics folded to j >= 0).
template <class C>
class QuasiTrigPoly {
public:
    using Term = std::pair<TrigKey, C>;

    QuasiTrigPoly() = default;

    static QuasiTrigPoly zero() { return {}; }

    static QuasiTrigPoly constant(C c) { return term(0, 0, TrigKind::cos, std::move(c)); }

    /// theta^k * cos/sin(j theta) with coefficient c.  Negative harmonics
    /// may be passed; they fold by parity.
    static QuasiTrigPoly term(int tpow, int harm, TrigKind kind, C c) {
        QuasiTrigPoly p;
        p.accumulate(tpow, harm, kind, std::move(c));
        p.normalize();
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int max_theta_power() const {
        int m = 0;
        for (const auto& [k, c] : terms_) m = std::max(m, static_cast<int>(k.tpow));
        return m;
    }

    QuasiTrigPoly operator-() const {
        QuasiTrigPoly r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }

    QuasiTrigPoly& operator+=(const QuasiTrigPoly& o) {
        if (o.terms_.empty()) return *this;
        std::vector<Term> merged;
        merged.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
                merged.push_back(std::move(terms_[i++]));
            } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
                merged.push_back(o.terms_[j++]);
            } else {
                C c = terms_[i].second + o.terms_[j].second;
                if (!c.is_zero()) merged.emplace_back(terms_[i].first, std::move(c));
                ++i; ++j;
            }
        }
        terms_ = std::move(merged);
        return *this;
    }
    QuasiTrigPoly& operator-=(const QuasiTrigPoly& o) { return *this += -o; }
    friend QuasiTrigPoly operator+(QuasiTrigPoly a, const QuasiTrigPoly& b) { return a += b; }
    friend QuasiTrigPoly operator-(QuasiTrigPoly a, const QuasiTrigPoly& b) { return a -= b; }

    QuasiTrigPoly scaled(const Rational& s) const {
        if (s.is_zero()) return {};
        QuasiTrigPoly r = *this;
        for (auto& [k, c] : r.terms_) detail::coeff_scale(c, s);
        return r;
    }

    /// Multiply every coefficient by a ring element (used to lift a
    /// Rational-coefficient polynomial into the jet ring).
    template <class D>
    QuasiTrigPoly<D> lifted(const D& factor) const {
        QuasiTrigPoly<D> r;
        for (const auto& [k, c] : terms_) {
            D v = factor;
            detail::coeff_scale(v, c);
            r.accumulate(k.tpow, k.harm, k.kind, std::move(v));
        }
        r.normalize();
        return r;
    }

    /// Exact product via the product-to-sum identities; theta powers add.
    friend QuasiTrigPoly operator*(const QuasiTrigPoly& a, const QuasiTrigPoly& b) {
        QuasiTrigPoly r;
        r.terms_.reserve(2 * a.terms_.size() * b.terms_.size());
        const Rational half(1, 2);
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                C c = ca * cb;
                if (c.is_zero()) continue;
                detail::coeff_scale(c, half);
                const int tp = ka.tpow + kb.tpow;
                const int js = ka.harm + kb.harm;
                const int jd = static_cast<int>(ka.harm) - static_cast<int>(kb.harm);
                if (ka.kind == TrigKind::cos && kb.kind == TrigKind::cos) {
                    // cos A cos B = (cos(A-B) + cos(A+B)) / 2
                    r.accumulate(tp, jd, TrigKind::cos, c);
                    r.accumulate(tp, js, TrigKind::cos, std::move(c));
                } else if (ka.kind == TrigKind::sin && kb.kind == TrigKind::sin) {
                    // sin A sin B = (cos(A-B) - cos(A+B)) / 2
                    r.accumulate(tp, jd, TrigKind::cos, c);
                    r.accumulate(tp, js, TrigKind::cos, -std::move(c));
                } else if (ka.kind == TrigKind::sin) {
                    // sin A cos B = (sin(A+B) + sin(A-B)) / 2
                    r.accumulate(tp, js, TrigKind::sin, c);
                    r.accumulate(tp, jd, TrigKind::sin, std::move(c));
                } else {
                    // cos A sin B = (sin(A+B) - sin(A-B)) / 2
                    r.accumulate(tp, js, TrigKind::sin, c);
                    r.accumulate(tp, jd, TrigKind::sin, -std::move(c));
                }
            }
        }
        r.normalize();
        return r;
    }

    /// d/dtheta.
    QuasiTrigPoly derivative() const {
        QuasiTrigPoly r;
        for (const auto& [k, c] : terms_) {
            if (k.tpow > 0) {
                C kc = c;
                detail::coeff_scale(kc, Rational(k.tpow));
                r.accumulate(k.tpow - 1, k.harm, k.kind, std::move(kc));
            }
            if (k.harm > 0) {
                C jc = c;
                detail::coeff_scale(jc, Rational(k.harm));
                if (k.kind == TrigKind::cos)
                    r.accumulate(k.tpow, k.harm, TrigKind::sin, -std::move(jc));
                else
                    r.accumulate(k.tpow, k.harm, TrigKind::cos, std::move(jc));
            }
        }
        r.normalize();
        return r;
    }

    /// The antiderivative F with F(0) = 0.  Harmonic terms integrate by
    /// parts in closed form; resonant terms (j = 0) raise the theta power.
    QuasiTrigPoly antiderivative() const {
        QuasiTrigPoly r;
        for (const auto& [k, c] : terms_) integrate_term(r, k, c);
        r.normalize();
        // fix the integration constant so that F(0) = 0
        C at0 = r.value_at_zero();
        if (!at0.is_zero()) {
            r.accumulate(0, 0, TrigKind::cos, -std::move(at0));
            r.normalize();
        }
        return r;
    }

    /// Exact evaluation at theta in {0, pi, -pi, 2pi}.  cos(j theta) = +-1
    /// and sin = 0 there; a theta^1 factor multiplies the coefficient by the
    /// symbol pi (possibly times a rational), and theta^k with k >= 2 would
    /// leave Q + Q*pi, so it throws PiOverflow.
    typename detail::PiPromote<C>::type eval_at(Abscissa a) const {
        using R = typename detail::PiPromote<C>::type;
        R acc{};
        for (const auto& [k, c] : terms_) {
            if (k.kind == TrigKind::sin) continue;
            Rational factor(1);
            bool needs_pi = false;
            switch (a) {
                case Abscissa::zero:
                    if (k.tpow > 0) continue;
                    break;
                case Abscissa::pi:
                case Abscissa::minus_pi:
                    if (k.tpow >= 2) throw PiOverflow("theta^" + std::to_string(k.tpow) +
                                                      " at an endpoint leaves Q + Q*pi");
                    if (k.tpow == 1) {
                        needs_pi = true;
                        if (a == Abscissa::minus_pi) factor *= Rational(-1);
                    }
                    if (k.harm % 2 == 1) factor *= Rational(-1);
                    break;
                case Abscissa::two_pi:
                    if (k.tpow >= 2) throw PiOverflow("theta^" + std::to_string(k.tpow) +
                                                      " at an endpoint leaves Q + Q*pi");
                    if (k.tpow == 1) { needs_pi = true; factor *= Rational(2); }
                    break;
            }
            R v = detail::promote(c);
            detail::coeff_scale(v, factor);
            if (needs_pi) v = detail::times_pi(v);
            acc += v;
        }
        return acc;
    }

    /// Floating-point evaluation at arbitrary theta, for test oracles only.
    /// Valid for parameter-free coefficient rings.
    double eval_numeric(double theta) const {
        double acc = 0.0;
        for (const auto& [k, c] : terms_) {
            const double trig = k.kind == TrigKind::cos ? std::cos(k.harm * theta)
                                                        : std::sin(k.harm * theta);
            acc += detail::coeff_to_double(c) * std::pow(theta, k.tpow) * trig;
        }
        return acc;
    }

    friend bool operator==(const QuasiTrigPoly& a, const QuasiTrigPoly& b) = default;

    /// Debug text form, terms in (k, j, kind) order: "c*theta^k*cos(j t)".
    std::string str() const;

    // -- internal builders (public for cross-instantiation lifting) --------
    void accumulate(int tpow, int harm, TrigKind kind, C c) {
        if (c.is_zero()) return;
        if (harm < 0) {  // fold by parity
            harm = -harm;
            if (kind == TrigKind::sin) c = -c;
        }
        if (harm == 0 && kind == TrigKind::sin) return;  // sin(0) == 0
        terms_.emplace_back(TrigKey{static_cast<std::uint16_t>(tpow),
                                    static_cast<std::uint16_t>(harm), kind},
                            std::move(c));
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms_.size();) {
            TrigKey key = terms_[i].first;
            C c = std::move(terms_[i].second);
            for (++i; i < terms_.size() && terms_[i].first == key; ++i) c += terms_[i].second;
            if (!c.is_zero()) terms_[out++] = Term(key, std::move(c));
        }
        terms_.resize(out);
    }

private:
    void integrate_term(QuasiTrigPoly& out, TrigKey k, C c) const {
        if (k.harm == 0) {
            // resonant: integral of theta^k is theta^(k+1)/(k+1)
            detail::coeff_scale(c, Rational(1, k.tpow + 1));
            out.accumulate(k.tpow + 1, 0, TrigKind::cos, std::move(c));
            return;
        }
        // iterated integration by parts:
        //   int theta^k cos(j t) = theta^k sin(j t)/j - (k/j) int theta^(k-1) sin(j t)
        //   int theta^k sin(j t) = -theta^k cos(j t)/j + (k/j) int theta^(k-1) cos(j t)
        int tp = k.tpow;
        TrigKind kind = k.kind;
        while (true) {
            C lead = c;
            detail::coeff_scale(lead, Rational(1, k.harm));
            if (kind == TrigKind::cos) {
                out.accumulate(tp, k.harm, TrigKind::sin, std::move(lead));
                if (tp == 0) break;
                detail::coeff_scale(c, Rational(-tp, k.harm));
                kind = TrigKind::sin;
            } else {
                out.accumulate(tp, k.harm, TrigKind::cos, -std::move(lead));
                if (tp == 0) break;
                detail::coeff_scale(c, Rational(tp, k.harm));
                kind = TrigKind::cos;
            }
            --tp;
        }
    }

    C value_at_zero() const {
        C acc{};
        for (const auto& [k, c] : terms_)
            if (k.tpow == 0 && k.kind == TrigKind::cos) acc += c;
        return acc;
    }

    std::vector<Term> terms_;
};

template <class C>
std::string QuasiTrigPoly<C>::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
        if (!s.empty()) s += " + ";
        std::string cs;
        if constexpr (std::is_same_v<C, Rational>) cs = c.str();
        else cs = c.str();
        s += "(" + cs + ")";
        if (k.tpow == 1) s += "*theta";
        else if (k.tpow > 1) s += "*theta^" + std::to_string(k.tpow);
        if (k.harm > 0)
            s += (k.kind == TrigKind::cos ? "*cos(" : "*sin(") + std::to_string(k.harm) + " t)";
    }
    return s;
}

} // namespace cycleforge::trigseries
