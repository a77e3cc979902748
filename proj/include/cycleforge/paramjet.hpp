#pragma once

#include "cycleforge/piscalar.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cycleforge::exactalg {

/// First-order jet c0 + sum_i c_i * eps_i over a set of perturbation
/// parameters identified by integer ids.  Products drop all second-order
/// terms: (a*b).gradient = a.constant*b.gradient + b.constant*a.gradient.
/// The gradient is a sparse map stored as an id-sorted vector.
class ParamJet {
public:
    using Entry = std::pair<std::uint32_t, PiScalar>;

    ParamJet() = default;
    ParamJet(PiScalar c) : c_(std::move(c)) {}
    ParamJet(Rational c) : c_(PiScalar(std::move(c))) {}
    ParamJet(long c) : c_(PiScalar(c)) {}

    static ParamJet variable(std::uint32_t id, PiScalar scale = PiScalar(Rational(1))) {
        ParamJet j;
        j.grad_.emplace_back(id, std::move(scale));
        return j;
    }

    const PiScalar& constant() const { return c_; }
    const std::vector<Entry>& gradient() const { return grad_; }
    bool is_zero() const { return c_.is_zero() && grad_.empty(); }

    PiScalar gradient_at(std::uint32_t id) const {
        for (const auto& [k, v] : grad_)
            if (k == id) return v;
        return PiScalar();
    }

    ParamJet operator-() const {
        ParamJet r;
        r.c_ = -c_;
        r.grad_.reserve(grad_.size());
        for (const auto& [k, v] : grad_) r.grad_.emplace_back(k, -v);
        return r;
    }

    ParamJet& operator+=(const ParamJet& o) { return merge(o, +1); }
    ParamJet& operator-=(const ParamJet& o) { return merge(o, -1); }
    friend ParamJet operator+(ParamJet a, const ParamJet& b) { return a += b; }
    friend ParamJet operator-(ParamJet a, const ParamJet& b) { return a -= b; }

    friend ParamJet operator*(const ParamJet& a, const ParamJet& b) {
        ParamJet r;
        r.c_ = a.c_ * b.c_;
        // First-order truncation: eps_i * eps_j terms are dropped entirely.
        if (!a.c_.is_zero() || !b.c_.is_zero()) {
            std::size_t i = 0, j = 0;
            while (i < a.grad_.size() || j < b.grad_.size()) {
                if (j == b.grad_.size() || (i < a.grad_.size() && a.grad_[i].first < b.grad_[j].first)) {
                    PiScalar v = a.grad_[i].second * b.c_;
                    if (!v.is_zero()) r.grad_.emplace_back(a.grad_[i].first, std::move(v));
                    ++i;
                } else if (i == a.grad_.size() || b.grad_[j].first < a.grad_[i].first) {
                    PiScalar v = b.grad_[j].second * a.c_;
                    if (!v.is_zero()) r.grad_.emplace_back(b.grad_[j].first, std::move(v));
                    ++j;
                } else {
                    PiScalar v = a.grad_[i].second * b.c_ + b.grad_[j].second * a.c_;
                    if (!v.is_zero()) r.grad_.emplace_back(a.grad_[i].first, std::move(v));
                    ++i; ++j;
                }
            }
        }
        return r;
    }
    ParamJet& operator*=(const ParamJet& o) { return *this = *this * o; }

    ParamJet scaled(const Rational& s) const {
        if (s.is_zero()) return ParamJet();
        ParamJet r;
        r.c_ = c_.scaled(s);
        r.grad_.reserve(grad_.size());
        for (const auto& [k, v] : grad_) r.grad_.emplace_back(k, v.scaled(s));
        return r;
    }

    ParamJet times_pi() const {
        ParamJet r;
        r.c_ = c_.times_pi();
        r.grad_.reserve(grad_.size());
        for (const auto& [k, v] : grad_) r.grad_.emplace_back(k, v.times_pi());
        return r;
    }

    /// First-order evaluation at a parameter assignment:
    /// constant + sum values[id] * gradient[id].
    PiScalar at(const std::vector<Rational>& values) const {
        PiScalar r = c_;
        for (const auto& [k, v] : grad_) r += v.scaled(values.at(k));
        return r;
    }

    friend bool operator==(const ParamJet& a, const ParamJet& b) = default;

    /// Debug text: constant plus "(coef)*e<id>" gradient entries.
    std::string str() const {
        std::string s = c_.str();
        for (const auto& [k, v] : grad_) s += " + (" + v.str() + ")*e" + std::to_string(k);
        return s;
    }

private:
    ParamJet& merge(const ParamJet& o, int sign) {
        c_ += sign < 0 ? -o.c_ : o.c_;
        if (o.grad_.empty()) return *this;
        std::vector<Entry> merged;
        merged.reserve(grad_.size() + o.grad_.size());
        std::size_t i = 0, j = 0;
        while (i < grad_.size() || j < o.grad_.size()) {
            if (j == o.grad_.size() || (i < grad_.size() && grad_[i].first < o.grad_[j].first)) {
                merged.push_back(std::move(grad_[i++]));
            } else if (i == grad_.size() || o.grad_[j].first < grad_[i].first) {
                PiScalar v = sign < 0 ? -o.grad_[j].second : o.grad_[j].second;
                merged.emplace_back(o.grad_[j].first, std::move(v));
                ++j;
            } else {
                PiScalar v = sign < 0 ? grad_[i].second - o.grad_[j].second
                                      : grad_[i].second + o.grad_[j].second;
                if (!v.is_zero()) merged.emplace_back(grad_[i].first, std::move(v));
                ++i; ++j;
            }
        }
        grad_ = std::move(merged);
        return *this;
    }

    PiScalar c_;
    std::vector<Entry> grad_;  // sorted by id, no zero entries
};

} // namespace cycleforge::exactalg
