#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace cycleforge::exactalg {

enum class Side : std::int8_t { lower = -1, upper = +1 };

inline char side_char(Side s) { return s == Side::upper ? '+' : '-'; }

/// One perturbation parameter: the coefficient a^s_{kl} (role 'a', added to
/// the dx equation) or b^s_{kl} (role 'b', dy equation) of the monomial
/// x^k y^l on side s.
struct ParamDescriptor {
    char role;  // 'a' or 'b'
    Side side;
    int kx;
    int ky;

    /// Canonical ordering: role a before b, side '-' before '+', then
    /// graded-lex on (kx, ky) with kx ascending inside a degree.  This is
    /// the column order of every Jacobian and the CLI output order.
    friend bool operator<(const ParamDescriptor& p, const ParamDescriptor& q) {
        return std::tuple(p.role, p.side != Side::lower, p.kx + p.ky, p.kx) <
               std::tuple(q.role, q.side != Side::lower, q.kx + q.ky, q.kx);
    }
    friend bool operator==(const ParamDescriptor& p, const ParamDescriptor& q) = default;

    std::string name() const {
        return std::string(1, role) + side_char(side) + "(" + std::to_string(kx) + "," +
               std::to_string(ky) + ")";
    }
};

/// Ordered, duplicate-free set of perturbation parameters.  The index of a
/// descriptor in the set is its parameter id; ids are what ParamJet
/// gradients are keyed by.
class ParamSet {
public:
    ParamSet() = default;

    /// The canonical set for a degree-n polynomial perturbation: monomials
    /// a^{+-}_{kl}, b^{+-}_{kl} with 2 <= k+l <= n on both sides.
    static ParamSet perturbation(int degree) {
        ParamSet ps;
        for (char role : {'a', 'b'})
            for (Side side : {Side::lower, Side::upper})
                for (int d = 2; d <= degree; ++d)
                    for (int kx = 0; kx <= d; ++kx)
                        ps.params_.push_back(ParamDescriptor{role, side, kx, d - kx});
        std::sort(ps.params_.begin(), ps.params_.end());
        return ps;
    }

    std::size_t size() const { return params_.size(); }
    bool empty() const { return params_.empty(); }
    const ParamDescriptor& operator[](std::size_t id) const { return params_[id]; }

    auto begin() const { return params_.begin(); }
    auto end() const { return params_.end(); }

    friend bool operator==(const ParamSet&, const ParamSet&) = default;

private:
    std::vector<ParamDescriptor> params_;
};

} // namespace cycleforge::exactalg
