#pragma once

#include "cycleforge/paramjet.hpp"

#include <random>
#include <string>

namespace testsupport {

using cycleforge::exactalg::ParamJet;
using cycleforge::exactalg::PiScalar;
using cycleforge::exactalg::Rational;

inline std::string fixture(const std::string& name) {
    return std::string(CYCLEFORGE_FIXTURES) + "/" + name;
}

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}

    long integer(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(gen);
    }
    Rational rational(long max_num = 12, long max_den = 7) {
        return Rational(integer(-max_num, max_num), integer(1, max_den));
    }
    PiScalar pi_scalar(bool allow_pi = true) {
        return PiScalar(rational(), allow_pi && integer(0, 2) == 0 ? rational() : Rational(0));
    }
    ParamJet jet(int nparams, bool allow_pi = false) {
        ParamJet j(pi_scalar(allow_pi));
        for (int p = 0; p < nparams; ++p)
            if (integer(0, 1) == 0)
                j += ParamJet::variable(static_cast<std::uint32_t>(p), pi_scalar(allow_pi));
        return j;
    }
    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
};

} // namespace testsupport
