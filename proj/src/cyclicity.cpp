#include "cycleforge/cyclicity.hpp"

#include <sstream>

namespace cycleforge::cyclicity {

CyclicityReport analyze(const PiecewiseSystem<ParamJet>& s, int order, bool pseudo_hopf) {
    CyclicityReport rep;
    rep.order = order;
    rep.params = s.params;
    rep.pseudo_hopf = pseudo_hopf;
    rep.series = lyapunov::displacement_series(s, order + 1);

    rep.jacobian.assign(static_cast<std::size_t>(order), {});
    for (int k = 1; k <= order; ++k) {
        auto& row = rep.jacobian[static_cast<std::size_t>(k - 1)];
        row.assign(rep.params.size(), PiScalar());
        for (const auto& [id, g] : rep.series.L(k).gradient()) row[id] = g;
    }

    const auto rk = exactalg::exact_rank(rep.jacobian);
    rep.rank = rk.rank;
    for (int col : rk.pivot_columns)
        rep.independent_params.push_back(rep.params[static_cast<std::size_t>(col)]);
    rep.cycle_bound = rep.rank + (pseudo_hopf ? 1 : 0);
    return rep;
}

std::string gradient_text(const ParamJet& jet, const ParamSet& params) {
    if (jet.gradient().empty()) return "0";
    std::string s;
    for (const auto& [id, g] : jet.gradient()) {
        if (!s.empty()) s += " + ";
        s += "(" + g.str() + ")*" + params[id].name();
    }
    return s;
}

std::string report_render(const CyclicityReport& r) {
    std::ostringstream os;
    os << "cyclicity analysis: first " << r.order << " Lyapunov constants (rho^2..rho^"
       << r.order + 1 << ")\n";
    os << "parameters (" << r.params.size() << "):";
    for (const auto& d : r.params) os << " " << d.name();
    os << "\n\n";
    for (int k = 1; k <= r.order; ++k) {
        const auto& L = r.series.L(k);
        os << "L(" << k << ") = " << L.constant().str() << "\n";
        os << "  grad: " << gradient_text(L, r.params) << "\n";
    }
    os << "\n";
    if (r.params.empty()) {
        os << "rank 0, no parameters\n";
        os << "cycle bound: " << r.cycle_bound << (r.pseudo_hopf ? " (with pseudo-Hopf)" : "")
           << "\n";
        return os.str();
    }
    os << "rank " << r.rank << "\n";
    os << "independent parameters (" << r.independent_params.size() << "):";
    for (const auto& d : r.independent_params) os << " " << d.name();
    os << "\n";
    os << "cycle bound: " << r.rank << " + 1 (pseudo-Hopf) = " << r.rank + 1
       << " when the sliding-segment cycle is counted, " << r.rank << " otherwise\n";
    os << "reported bound: " << r.cycle_bound << (r.pseudo_hopf ? " (pseudo-Hopf on)" : " (pseudo-Hopf off)")
       << "\n";
    return os.str();
}

std::string jacobian_csv(const CyclicityReport& r) {
    std::ostringstream os;
    os << "constant";
    for (const auto& d : r.params) os << "," << d.name();
    os << "\n";
    for (int k = 1; k <= r.order; ++k) {
        os << "L(" << k << ")";
        for (const auto& e : r.jacobian[static_cast<std::size_t>(k - 1)]) os << "," << e.str();
        os << "\n";
    }
    return os.str();
}

} // namespace cycleforge::cyclicity
