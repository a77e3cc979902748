#include "cycleforge/exact_rank.hpp"

#include <cassert>
#include <stdexcept>

namespace cycleforge::exactalg {

namespace {

// Dense univariate polynomial over Q; the indeterminate stands for pi.
// Coefficient vector carries no trailing zeros.
struct RatPoly {
    std::vector<Rational> c;

    static RatPoly zero() { return {}; }
    static RatPoly one() { return RatPoly{{Rational(1)}}; }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        RatPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }

    friend RatPoly operator-(RatPoly a, const RatPoly& b) {
        if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), Rational(0));
        for (std::size_t i = 0; i < b.c.size(); ++i) a.c[i] -= b.c[i];
        a.trim();
        return a;
    }

    // Exact division; the Bareiss identity guarantees divisibility here.
    RatPoly divexact(const RatPoly& d) const {
        assert(!d.is_zero());
        if (is_zero()) return {};
        RatPoly rem = *this, q;
        if (rem.degree() < d.degree())
            throw std::logic_error("exact_rank: non-exact polynomial division");
        q.c.assign(static_cast<std::size_t>(rem.degree() - d.degree()) + 1, Rational(0));
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            const int k = rem.degree() - d.degree();
            const Rational f = rem.c.back() / d.c.back();
            q.c[static_cast<std::size_t>(k)] = f;
            for (std::size_t i = 0; i < d.c.size(); ++i)
                rem.c[static_cast<std::size_t>(k) + i] -= f * d.c[i];
            rem.trim();
        }
        if (!rem.is_zero()) throw std::logic_error("exact_rank: non-exact polynomial division");
        q.trim();
        return q;
    }
};

RatPoly from_scalar(const PiScalar& s) {
    RatPoly p;
    p.c = {s.rat, s.pi};
    p.trim();
    return p;
}

RankResult eliminate(std::vector<std::vector<RatPoly>> m) {
    RankResult res;
    if (m.empty() || m[0].empty()) return res;
    const std::size_t rows = m.size(), cols = m[0].size();
    for (const auto& r : m)
        if (r.size() != cols) throw std::invalid_argument("exact_rank: ragged matrix");

    RatPoly prev = RatPoly::one();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;  // dependent column
        std::swap(m[piv], m[row]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                m[i][j] = (m[row][col] * m[i][j] - m[i][col] * m[row][j]).divexact(prev);
            m[i][col] = RatPoly::zero();
        }
        prev = m[row][col];
        res.pivot_columns.push_back(static_cast<int>(col));
        ++row;
    }
    res.rank = static_cast<int>(res.pivot_columns.size());
    return res;
}

} // namespace

RankResult exact_rank(const std::vector<std::vector<PiScalar>>& m) {
    std::vector<std::vector<RatPoly>> p(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        p[i].reserve(m[i].size());
        for (const auto& e : m[i]) p[i].push_back(from_scalar(e));
    }
    return eliminate(std::move(p));
}

RankResult rank_at(const std::vector<std::vector<PiScalar>>& m, const Rational& q) {
    std::vector<std::vector<RatPoly>> p(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        p[i].reserve(m[i].size());
        for (const auto& e : m[i]) {
            RatPoly r;
            r.c = {e.rat + e.pi * q};
            r.trim();
            p[i].push_back(std::move(r));
        }
    }
    return eliminate(std::move(p));
}

} // namespace cycleforge::exactalg
