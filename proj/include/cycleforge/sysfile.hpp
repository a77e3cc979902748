#pragma once

#include "cycleforge/displacement.hpp"
#include "cycleforge/normal_form.hpp"
#include "cycleforge/numeric_system.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace cycleforge::io {

using exactalg::Rational;
using exactalg::Side;

/// One parsed monomial line: `dx k l c` or `dy k l c`.
struct MonomialLine {
    bool is_dx;
    int kx, ky;
    Rational coeff;
};

/// Parsed system-description file.  Line-oriented plain text:
///
///   # comment
///   center p/q p/q          (optional: equilibrium to normalize about)
///   vary side:+ dy k l      (optional: the epsilon monomial of scan families)
///   perturb degree n        (optional: attach jet monomials, 2 <= k+l <= n)
///   side:+                  (begins the upper block)
///   dx k l c                (adds c x^k y^l to the dx equation)
///   dy k l c
///   side:-                  (begins the lower block)
///   ...
///
/// Coefficients are rational literals `p/q` or integers.  Duplicate
/// monomial lines accumulate.  Unknown directives are rejected.
struct ParsedSystem {
    std::vector<MonomialLine> upper, lower;
    std::optional<std::pair<Rational, Rational>> center;
    std::optional<int> perturb_degree;
    struct Vary {
        Side side;
        bool is_dx;
        int kx, ky;
    };
    std::optional<Vary> vary;
};

ParsedSystem parse_system(std::istream& in);
ParsedSystem parse_system_file(const std::string& path);

/// Canonical re-print: directives first, then `side:+` and `side:-` blocks
/// with monomials in (dx before dy, graded-lex) order.  Reparsing the dump
/// yields an identical structure.
std::string dump_system(const ParsedSystem& ps);

/// Exact symbolic form for the `lyap`/`rank` pipeline.  Applies the exact
/// normal-form construction when a `center` directive is present (both
/// transformed halves must land exactly in normal form) and attaches the
/// declared perturbation.  Throws NormalFormError / NotACenter accordingly.
lyapunov::PiecewiseSystem<exactalg::ParamJet> to_symbolic(const ParsedSystem& ps);

/// Float form for the simulator, normalized if a `center` directive is
/// present, in raw coordinates otherwise.  `eps` offsets the `vary`
/// monomial when given.
filippov::NumericSystem to_numeric(const ParsedSystem& ps, filippov::Real eps = 0.0L);

} // namespace cycleforge::io
