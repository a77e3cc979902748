#pragma once

#include "cycleforge/displacement.hpp"
#include "cycleforge/exact_rank.hpp"

#include <string>
#include <vector>

namespace cycleforge::cyclicity {

using exactalg::ParamDescriptor;
using exactalg::ParamSet;
using exactalg::PiScalar;
using lyapunov::DisplacementSeries;
using lyapunov::PiecewiseSystem;
using exactalg::ParamJet;

/// Result of the first-order rank analysis: the Jacobian of L(1)..L(K) with
/// respect to the perturbation parameters at 0, its exact rank over Q(pi),
/// the deterministic independent parameter subset (leftmost pivots in
/// canonical column order), and the cycle lower bound.
struct CyclicityReport {
    int order = 0;                    // K: constants L(1)..L(K) analyzed
    ParamSet params;                  // column order of the Jacobian
    DisplacementSeries series;        // constants including constant parts
    std::vector<std::vector<PiScalar>> jacobian;  // K rows, |params| columns
    int rank = 0;
    std::vector<ParamDescriptor> independent_params;  // one per pivot column
    bool pseudo_hopf = true;
    int cycle_bound = 0;              // rank (+1 with the pseudo-Hopf cycle)
};

/// Compute the displacement series to rho^{K+1}, extract the gradient rows,
/// and run the exact rank analysis.  With pseudo_hopf enabled the bound
/// adds the extra cycle born from the sliding-segment bifurcation, which is
/// driven by a constant term outside this parameter set.
CyclicityReport analyze(const PiecewiseSystem<ParamJet>& s, int order, bool pseudo_hopf);

/// Deterministic human-readable report; byte-stable across runs.
std::string report_render(const CyclicityReport& r);

/// The Jacobian as CSV with canonical PiScalar text entries.
std::string jacobian_csv(const CyclicityReport& r);

/// Canonical text of one gradient row: "(c)*name + (c)*name + ..." in
/// ParamSet order, "0" when empty.  Shared by reports and golden tests.
std::string gradient_text(const ParamJet& jet, const ParamSet& params);

} // namespace cycleforge::cyclicity
