#pragma once

#include "cycleforge/paramjet.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace cycleforge::lyapunov {

using exactalg::ParamJet;
using exactalg::Rational;

/// Sparse bivariate polynomial sum c_{kl} x^k y^l over a coefficient ring C
/// (Rational or ParamJet).  Canonical form: monomials sorted by (k, l), no
/// zero coefficients.
template <class C>
class PlanarPoly {
public:
    using Key = std::pair<std::uint16_t, std::uint16_t>;
    using Mono = std::pair<Key, C>;

    PlanarPoly() = default;

    static PlanarPoly monomial(int kx, int ky, C c) {
        PlanarPoly p;
        if (!c.is_zero())
            p.mono_.emplace_back(Key{static_cast<std::uint16_t>(kx),
                                     static_cast<std::uint16_t>(ky)},
                                 std::move(c));
        return p;
    }

    const std::vector<Mono>& monomials() const { return mono_; }
    bool is_zero() const { return mono_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [k, c] : mono_) d = std::max(d, k.first + k.second);
        return d;
    }

    C coefficient(int kx, int ky) const {
        const Key key{static_cast<std::uint16_t>(kx), static_cast<std::uint16_t>(ky)};
        for (const auto& [k, c] : mono_)
            if (k == key) return c;
        return C{};
    }

    void add_term(int kx, int ky, C c) {
        if (c.is_zero()) return;
        mono_.emplace_back(Key{static_cast<std::uint16_t>(kx), static_cast<std::uint16_t>(ky)},
                           std::move(c));
        normalize();
    }

    PlanarPoly operator-() const {
        PlanarPoly r = *this;
        for (auto& [k, c] : r.mono_) c = -c;
        return r;
    }

    PlanarPoly& operator+=(const PlanarPoly& o) {
        mono_.insert(mono_.end(), o.mono_.begin(), o.mono_.end());
        normalize();
        return *this;
    }
    PlanarPoly& operator-=(const PlanarPoly& o) { return *this += -o; }
    friend PlanarPoly operator+(PlanarPoly a, const PlanarPoly& b) { return a += b; }
    friend PlanarPoly operator-(PlanarPoly a, const PlanarPoly& b) { return a -= b; }

    friend PlanarPoly operator*(const PlanarPoly& a, const PlanarPoly& b) {
        PlanarPoly r;
        r.mono_.reserve(a.mono_.size() * b.mono_.size());
        for (const auto& [ka, ca] : a.mono_)
            for (const auto& [kb, cb] : b.mono_) {
                C c = ca * cb;
                if (!c.is_zero())
                    r.mono_.emplace_back(
                        Key{static_cast<std::uint16_t>(ka.first + kb.first),
                            static_cast<std::uint16_t>(ka.second + kb.second)},
                        std::move(c));
            }
        r.normalize();
        return r;
    }

    PlanarPoly scaled(const Rational& s) const {
        if (s.is_zero()) return {};
        PlanarPoly r = *this;
        for (auto& [k, c] : r.mono_) {
            if constexpr (std::is_same_v<C, Rational>) c *= s;
            else c = c.scaled(s);
        }
        return r;
    }

    /// p(x + ax, y + ay): translate the origin to (-ax, -ay).
    PlanarPoly shifted(const C& ax, const C& ay) const {
        PlanarPoly r;
        for (const auto& [k, c] : mono_) {
            // expand (x + ax)^kx (y + ay)^ky
            std::vector<C> xs = binomial_row(ax, k.first);
            std::vector<C> ys = binomial_row(ay, k.second);
            for (int i = 0; i <= k.first; ++i)
                for (int j = 0; j <= k.second; ++j) {
                    C v = c * xs[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(j)];
                    if (!v.is_zero())
                        r.mono_.emplace_back(Key{static_cast<std::uint16_t>(i),
                                                 static_cast<std::uint16_t>(j)},
                                             std::move(v));
                }
        }
        r.normalize();
        return r;
    }

    /// p(b11 u + b12 w, b21 u + b22 w): linear substitution.
    PlanarPoly substituted(const C& b11, const C& b12, const C& b21, const C& b22) const {
        const PlanarPoly xs = monomial(1, 0, b11) + monomial(0, 1, b12);
        const PlanarPoly ys = monomial(1, 0, b21) + monomial(0, 1, b22);
        PlanarPoly r;
        for (const auto& [k, c] : mono_) {
            PlanarPoly t = monomial(0, 0, c);
            for (int i = 0; i < k.first; ++i) t = t * xs;
            for (int j = 0; j < k.second; ++j) t = t * ys;
            r += t;
        }
        return r;
    }

    friend bool operator==(const PlanarPoly&, const PlanarPoly&) = default;

private:
    // row of (x + a)^n coefficients: index i holds C(n, i) a^(n-i)
    static std::vector<C> binomial_row(const C& a, int n) {
        std::vector<C> row(static_cast<std::size_t>(n) + 1);
        C apow(Rational(1));
        for (int i = n; i >= 0; --i) {  // apow = a^(n-i)
            C v = apow;
            if constexpr (std::is_same_v<C, Rational>) v *= exactalg::binomial(n, i);
            else v = v.scaled(exactalg::binomial(n, i));
            row[static_cast<std::size_t>(i)] = std::move(v);
            if (i > 0) apow = apow * a;
        }
        return row;
    }

    void normalize() {
        std::sort(mono_.begin(), mono_.end(),
                  [](const Mono& a, const Mono& b) { return a.first < b.first; });
        std::size_t out = 0;
        for (std::size_t i = 0; i < mono_.size();) {
            Key key = mono_[i].first;
            C c = std::move(mono_[i].second);
            for (++i; i < mono_.size() && mono_[i].first == key; ++i) c += mono_[i].second;
            if (!c.is_zero()) mono_[out++] = Mono(key, std::move(c));
        }
        mono_.resize(out);
    }

    std::vector<Mono> mono_;
};

/// Lift a rational-coefficient polynomial into the jet ring (all gradients
/// empty).
inline PlanarPoly<ParamJet> lift_to_jets(const PlanarPoly<Rational>& p) {
    PlanarPoly<ParamJet> r;
    for (const auto& [k, c] : p.monomials()) r.add_term(k.first, k.second, ParamJet(c));
    return r;
}

} // namespace cycleforge::lyapunov
