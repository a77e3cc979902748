#include "cycleforge/cyclicity.hpp"
#include "cycleforge/numeric_displacement.hpp"
#include "cycleforge/numeric_system.hpp"
#include "cycleforge/sysfile.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace cycleforge;
using namespace cycleforge::cyclicity;
using exactalg::Rational;
using filippov::Real;

namespace {

const lyapunov::PiecewiseSystem<ParamJet>& cub_perturbed() {
    static const auto sys = io::to_symbolic(
        io::parse_system_file(testsupport::fixture("komquar_cub_perturbed")));
    return sys;
}

} // namespace

TEST_CASE("empty parameter set reports rank 0") {
    const auto sys = io::to_symbolic(io::parse_system_file(testsupport::fixture("komquar_cub")));
    const auto rep = analyze(sys, 3, true);
    CHECK(rep.rank == 0);
    CHECK(rep.independent_params.empty());
    CHECK(rep.cycle_bound == 1);  // only the pseudo-Hopf cycle
    const std::string txt = report_render(rep);
    CHECK(txt.find("rank 0, no parameters") != std::string::npos);
}

TEST_CASE("rank at low order matches the gradient structure") {
    // L(1)..L(3) of the cubic fixture span rank 3
    const auto rep = analyze(cub_perturbed(), 3, true);
    CHECK(rep.order == 3);
    CHECK(rep.rank == 3);
    CHECK(rep.cycle_bound == 4);
    CHECK(rep.independent_params.size() == 3);
    // deterministic leftmost pivots: a-(0,2) enters at L(2), a-(1,1) at L(1)
    CHECK(rep.independent_params[0].name() == "a-(0,2)");

    const auto rep_off = analyze(cub_perturbed(), 3, false);
    CHECK(rep_off.rank == 3);
    CHECK(rep_off.cycle_bound == 3);
}

TEST_CASE("rank is monotone in the analysis order") {
    int prev = 0;
    for (int k : {1, 2, 4, 6}) {
        const auto rep = analyze(cub_perturbed(), k, true);
        CHECK(rep.rank >= prev);
        prev = rep.rank;
    }
}

TEST_CASE("rank invariant under scaling all parameter jets") {
    // scaling a parameter rescales a Jacobian column; rank and the pivot
    // parameter list are unchanged
    const auto rep = analyze(cub_perturbed(), 5, true);
    auto scaled = rep.jacobian;
    for (auto& row : scaled)
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = row[j].scaled(Rational(static_cast<long>(2 + j % 3), 3));
    const auto after = exactalg::exact_rank(scaled);
    CHECK(after.rank == rep.rank);
    std::vector<exactalg::ParamDescriptor> after_params;
    for (int col : after.pivot_columns) after_params.push_back(rep.params[col]);
    CHECK(after_params == rep.independent_params);
}

TEST_CASE("rank invariant under column permutation of the Jacobian") {
    const auto rep = analyze(cub_perturbed(), 5, true);
    std::mt19937 gen(301);
    std::vector<std::size_t> perm(rep.params.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<std::vector<exactalg::PiScalar>> shuffled(rep.jacobian.size());
        for (std::size_t i = 0; i < rep.jacobian.size(); ++i)
            for (std::size_t j : perm) shuffled[i].push_back(rep.jacobian[i][j]);
        CHECK(exactalg::exact_rank(shuffled).rank == rep.rank);
    }
}

TEST_CASE("report is byte-stable across runs") {
    const auto a = report_render(analyze(cub_perturbed(), 4, true));
    const auto b = report_render(analyze(cub_perturbed(), 4, true));
    CHECK(a == b);
    CHECK(a.find("L(1)") != std::string::npos);
    CHECK(a.find("independent parameters") != std::string::npos);
}

TEST_CASE("jacobian csv carries canonical scalar text") {
    const auto rep = analyze(cub_perturbed(), 2, true);
    const auto csv = jacobian_csv(rep);
    CHECK(csv.find("constant,a-(0,2),a-(1,1)") == 0);
    CHECK(csv.find("L(2)") != std::string::npos);
    CHECK(csv.find("1/16*pi") != std::string::npos);
}

TEST_CASE("gradients agree with central finite differences of the numeric map") {
    // For parameter p and order k: fit the numeric displacement of the
    // instantiated system at +-h e_p by rho-polynomials, difference the
    // fitted rho^{k+1} coefficients, and compare with the exact jet entry.
    const auto& sys = cub_perturbed();
    const int K = 3;
    const auto ds = lyapunov::displacement_series(sys, K + 1);

    const Real h = 1e-5L;

    filippov::DisplacementOptions dopt;
    dopt.section = filippov::Section::positive_axis;
    dopt.ode.rtol = 1e-17L;
    dopt.ode.atol = 1e-22L;

    // Sequential Richardson deflation at geometric nodes rho_j = rho0/2^j.
    // The displacement gradient series has a finite convergence radius, so a
    // plain polynomial fit over fixed nodes aliases the tail into every
    // coefficient; deflation extracts c_2, c_3, ... one at a time, each by a
    // Richardson table that eliminates the successive known powers, then
    // subtracts the finished term before the next stage.
    const int n_nodes = 7, table_depth = 5;
    const long double rho0 = 0.05L;
    const auto fit_coefficient = [&](const filippov::NumericSystem& ns, int k) {
        std::vector<long double> rho(n_nodes), g(n_nodes);
        for (int j = 0; j < n_nodes; ++j) {
            rho[j] = rho0 / std::pow(2.0L, static_cast<long double>(j));
            g[j] = filippov::numeric_displacement(ns, rho[j], dopt).value;
        }
        long double coef = 0;
        for (int s = 2; s <= k + 1; ++s) {
            std::vector<long double> T(n_nodes);
            for (int j = 0; j < n_nodes; ++j) T[j] = g[j] / std::pow(rho[j], (long double)s);
            for (int m = 1; m <= table_depth; ++m) {  // eliminate the rho^m error term
                const long double w = std::pow(2.0L, (long double)m);
                for (int j = 0; j + m < n_nodes; ++j) T[j] = (w * T[j + 1] - T[j]) / (w - 1);
            }
            coef = T[0];
            for (int j = 0; j < n_nodes; ++j)
                g[j] -= coef * std::pow(rho[j], (long double)s);
        }
        return coef;
    };

    std::mt19937 gen(302);
    std::uniform_int_distribution<int> pick_k(1, K);
    std::uniform_int_distribution<std::size_t> pick_p(0, sys.params.size() - 1);
    for (int trial = 0; trial < 5; ++trial) {
        const int k = pick_k(gen);
        const std::size_t p = pick_p(gen);
        const exactalg::PiScalar exact = ds.L(k).gradient_at(static_cast<std::uint32_t>(p));

        std::vector<Rational> plus(sys.params.size(), Rational(0));
        plus[p] = Rational(1, 100000);
        std::vector<Rational> minus(sys.params.size(), Rational(0));
        minus[p] = Rational(-1, 100000);
        const long double cp = fit_coefficient(filippov::instantiate(sys, plus), k);
        const long double cm = fit_coefficient(filippov::instantiate(sys, minus), k);
        const long double fd = (cp - cm) / (2.0L * h);

        const long double want = exact.to_long_double();
        if (std::fabs((double)want) < 1e-12) {
            CHECK(std::fabs((double)fd) < 1e-6);
        } else {
            CHECK(std::fabs((double)(fd - want)) <= 1e-4 * std::fabs((double)want));
        }
    }
}
