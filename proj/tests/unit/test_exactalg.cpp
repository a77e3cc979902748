#include "cycleforge/exact_rank.hpp"
#include "cycleforge/paramjet.hpp"
#include "cycleforge/paramset.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cycleforge::exactalg;
using testsupport::Rng;

TEST_CASE("rational canonical form and text") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational(-8, 6).str() == "-4/3");
    CHECK(Rational(7).str() == "7");
    CHECK(Rational::parse("22/7") == Rational(22, 7));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK((double)Rational(1, 3).to_long_double() == doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("rational ring laws (randomized)") {
    Rng rng(101);
    for (int i = 0; i < 25; ++i) {
        const Rational a = rng.rational(), b = rng.rational(), c = rng.rational();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("pi scalar arithmetic and overflow") {
    const PiScalar x(Rational(1, 2), Rational(3));  // 1/2 + 3 pi
    const PiScalar y(Rational(2), Rational(0));     // 2
    CHECK((x * y) == PiScalar(Rational(1), Rational(6)));
    CHECK((x + x) == PiScalar(Rational(1), Rational(6)));
    CHECK_THROWS_AS(x * x, cycleforge::PiOverflow);
    CHECK_THROWS_AS(x.times_pi(), cycleforge::PiOverflow);
    CHECK(y.times_pi() == PiScalar::pi_times(Rational(2)));

    CHECK(PiScalar(Rational(1, 8)).str() == "1/8");
    CHECK(PiScalar::pi_times(Rational(1, 8)).str() == "1/8*pi");
    CHECK(PiScalar::pi_times(Rational(-1)).str() == "-pi");
    CHECK(PiScalar(Rational(2, 3), Rational(-1, 8)).str() == "2/3 - 1/8*pi");
    CHECK(PiScalar().str() == "0");
}

TEST_CASE("pi scalar ring laws where defined (randomized)") {
    Rng rng(102);
    for (int i = 0; i < 25; ++i) {
        const PiScalar a = rng.pi_scalar(), b = rng.pi_scalar();
        const PiScalar r(rng.rational());  // pi-free factor keeps products legal
        CHECK(a + b == b + a);
        CHECK((a + b) + r == a + (b + r));
        CHECK(r * (a + b) == r * a + r * b);
        CHECK(a * r == r * a);
    }
}

TEST_CASE("jet product follows the first-order rule") {
    const ParamJet e1 = ParamJet::variable(0);
    const ParamJet e2 = ParamJet::variable(1);

    // (1 + e1)(2 + e2) = 2 + 2 e1 + e2
    ParamJet p = (ParamJet(1) + e1) * (ParamJet(2) + e2);
    CHECK(p.constant() == PiScalar(Rational(2)));
    CHECK(p.gradient_at(0) == PiScalar(Rational(2)));
    CHECK(p.gradient_at(1) == PiScalar(Rational(1)));

    // (0 + e1)(0 + e2) = 0: second-order terms dropped
    CHECK((e1 * e2).is_zero());

    // (pi/8)(2 + e1) = pi/4 + (pi/8) e1
    ParamJet q = ParamJet(PiScalar::pi_times(Rational(1, 8))) * (ParamJet(2) + e1);
    CHECK(q.constant() == PiScalar::pi_times(Rational(1, 4)));
    CHECK(q.gradient_at(0) == PiScalar::pi_times(Rational(1, 8)));
}

TEST_CASE("jet product equals degree-1 truncation of full product (randomized)") {
    // the full polynomial product of (c + sum g_p e_p) pairs, with the
    // quadratic part deleted, must agree with the jet product entrywise
    Rng rng(103);
    const std::uint32_t P = 4;
    for (int rep = 0; rep < 25; ++rep) {
        const ParamJet a = rng.jet(P), b = rng.jet(P);
        const ParamJet ab = a * b;
        CHECK(ab.constant() == a.constant() * b.constant());
        for (std::uint32_t p = 0; p < P; ++p) {
            const PiScalar expect =
                a.constant() * b.gradient_at(p) + b.constant() * a.gradient_at(p);
            CHECK(ab.gradient_at(p) == expect);
        }
    }
}

TEST_CASE("jet ring laws (randomized)") {
    Rng rng(104);
    for (int rep = 0; rep < 25; ++rep) {
        const ParamJet a = rng.jet(3), b = rng.jet(3), c = rng.jet(3);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("param set canonical order") {
    const ParamSet ps = ParamSet::perturbation(2);
    REQUIRE(ps.size() == 12);
    CHECK(ps[0].name() == "a-(0,2)");
    CHECK(ps[1].name() == "a-(1,1)");
    CHECK(ps[2].name() == "a-(2,0)");
    CHECK(ps[3].name() == "a+(0,2)");
    CHECK(ps[6].name() == "b-(0,2)");
    CHECK(ps[11].name() == "b+(2,0)");

    const ParamSet p3 = ParamSet::perturbation(3);
    CHECK(p3.size() == 28);
    // graded order inside a role/side block
    CHECK(p3[0].name() == "a-(0,2)");
    CHECK(p3[3].name() == "a-(0,3)");
    CHECK(p3[6].name() == "a-(3,0)");
}

TEST_CASE("exact rank basics") {
    using M = std::vector<std::vector<PiScalar>>;
    const PiScalar one(Rational(1)), zero, pi = PiScalar::pi_times(Rational(1));

    CHECK(exact_rank(M{}).rank == 0);

    const M m1{{one, zero}, {zero, zero}};
    const auto r1 = exact_rank(m1);
    CHECK(r1.rank == 1);
    CHECK(r1.pivot_columns == std::vector<int>{0});

    // second row is twice the first
    const M m2{{one, pi}, {PiScalar(Rational(2)), PiScalar::pi_times(Rational(2))}};
    const auto r2 = exact_rank(m2);
    CHECK(r2.rank == 1);
    CHECK(r2.pivot_columns == std::vector<int>{0});

    // det = 1 - pi^2, nonzero as a polynomial, so full rank over Q(pi)
    const M m3{{one, pi}, {pi, one}};
    CHECK(exact_rank(m3).rank == 2);
}

TEST_CASE("exact rank agrees with random rational substitutions") {
    Rng rng(105);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t rows = 3 + rep % 3, cols = 3 + (rep / 3) % 3;
        std::vector<std::vector<PiScalar>> m(rows);
        for (auto& row : m) {
            row.reserve(cols);
            for (std::size_t j = 0; j < cols; ++j) row.push_back(rng.pi_scalar());
        }
        // plant a dependency to exercise rank deficiency
        for (std::size_t j = 0; j < cols; ++j) m[rows - 1][j] = m[0][j].scaled(Rational(3, 2));
        const auto exact = exact_rank(m);
        for (const Rational& q : {Rational(355, 113), Rational(-17, 5), Rational(1291, 331)}) {
            const auto sub = rank_at(m, q);
            CHECK(exact.rank == sub.rank);
        }
    }
}

TEST_CASE("exact rank invariant under column permutations (rank only)") {
    Rng rng(106);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::vector<PiScalar>> m(4);
        for (auto& row : m)
            for (int j = 0; j < 5; ++j) row.push_back(rng.pi_scalar());
        const int base = exact_rank(m).rank;
        std::vector<int> perm{0, 1, 2, 3, 4};
        std::shuffle(perm.begin(), perm.end(), rng.gen);
        std::vector<std::vector<PiScalar>> shuffled(4);
        for (std::size_t i = 0; i < 4; ++i)
            for (int j : perm) shuffled[i].push_back(m[i][static_cast<std::size_t>(j)]);
        CHECK(exact_rank(shuffled).rank == base);
    }
}

TEST_CASE("exact rank invariant under row scaling, pivots included") {
    Rng rng(107);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::vector<PiScalar>> m(3);
        for (auto& row : m)
            for (int j = 0; j < 6; ++j) row.push_back(rng.pi_scalar());
        const auto base = exact_rank(m);
        auto scaled = m;
        for (auto& row : scaled) {
            Rational s = rng.rational();
            if (s.is_zero()) s = Rational(5, 3);
            for (auto& e : row) e = e.scaled(s);
        }
        const auto after = exact_rank(scaled);
        CHECK(after.rank == base.rank);
        CHECK(after.pivot_columns == base.pivot_columns);
    }
}
