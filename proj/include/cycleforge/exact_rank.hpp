#pragma once

#include "cycleforge/piscalar.hpp"

#include <vector>

namespace cycleforge::exactalg {

struct RankResult {
    int rank = 0;
    std::vector<int> pivot_columns;  // ascending; one per pivot, |pivot_columns| == rank
};

/// Exact rank of a matrix over the field Q(pi), with pi treated as a
/// transcendental indeterminate.  Entries are degree-<=1 polynomials in pi;
/// elimination is fraction-free (Bareiss), pivots are nonzero polynomials,
/// and pivot columns are reported in the fixed input column order
/// (leftmost-nonzero pivoting, no column exchanges).
///
/// rows may be ragged-free: every row must have the same length.  An empty
/// matrix has rank 0.
RankResult exact_rank(const std::vector<std::vector<PiScalar>>& m);

/// Rank of the same matrix after the substitution pi -> q, over Q.  Used by
/// tests to cross-check exact_rank at random rational points.
RankResult rank_at(const std::vector<std::vector<PiScalar>>& m, const Rational& q);

} // namespace cycleforge::exactalg
