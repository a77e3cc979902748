#pragma once

#include <stdexcept>
#include <string>

namespace cycleforge {

/// Base class for all domain errors raised by the library.  The CLI maps
/// these to exit code 2; anything else (usage, parse) maps to 1.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A product would leave the ring Q + Q*pi (a pi^2 term appeared).
struct PiOverflow : MathError {
    PiOverflow() : MathError("pi^2 term encountered; value leaves Q + Q*pi") {}
    explicit PiOverflow(const std::string& what) : MathError(what) {}
};

/// The linearization at the requested equilibrium is not a linear center
/// (nonzero trace or non-positive determinant), or the point is not an
/// equilibrium at all.
struct NotACenter : MathError {
    using MathError::MathError;
};

/// A system handed to a symbolic routine is not in normal form, or cannot
/// be brought to it over the rationals.
struct NormalFormError : MathError {
    using MathError::MathError;
};

/// sliding_field was asked for a point outside the sliding/escaping set.
struct NotSlidingRegion : MathError {
    using MathError::MathError;
};

/// The adaptive integrator could not meet its tolerance.
struct StepFailure : MathError {
    using MathError::MathError;
};

/// An event fell inside the tangency tolerance; the trajectory was
/// truncated rather than classified.
struct EventAmbiguity : MathError {
    using MathError::MathError;
};

/// Bracket endpoints of a cycle search carry the same displacement sign.
struct NoSignChange : MathError {
    using MathError::MathError;
};

/// System-description file could not be parsed.  Carries 1-based line and
/// column of the offending token.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& what)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ": " + what),
          line(line_), column(column_) {}
};

} // namespace cycleforge
