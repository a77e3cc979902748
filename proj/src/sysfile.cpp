#include "cycleforge/sysfile.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cycleforge::io {

namespace {

struct Cursor {
    int line = 0;
    int column = 0;
};

[[noreturn]] void fail(const Cursor& at, const std::string& msg) {
    throw ParseError(at.line, at.column, msg);
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

int parse_int(const std::string& t, const Cursor& at, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        fail(at, "expected " + what + ", got '" + t + "'");
    }
}

Rational parse_rat(const std::string& t, const Cursor& at) {
    try {
        return Rational::parse(t);
    } catch (const std::invalid_argument&) {
        fail(at, "expected a rational literal, got '" + t + "'");
    }
}

Side parse_side_token(const std::string& t, const Cursor& at) {
    if (t == "side:+") return Side::upper;
    if (t == "side:-") return Side::lower;
    fail(at, "expected side:+ or side:-, got '" + t + "'");
}

} // namespace

ParsedSystem parse_system(std::istream& in) {
    ParsedSystem ps;
    std::vector<MonomialLine>* block = nullptr;
    bool saw_upper = false, saw_lower = false;

    std::string line;
    Cursor at;
    while (std::getline(in, line)) {
        ++at.line;
        at.column = 1;
        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];

        if (head == "side:+" || head == "side:-") {
            if (toks.size() != 1) fail(at, "side directive takes no arguments");
            if (head == "side:+") { block = &ps.upper; saw_upper = true; }
            else { block = &ps.lower; saw_lower = true; }
        } else if (head == "dx" || head == "dy") {
            if (!block) fail(at, "monomial line before any side:+ / side:- header");
            if (toks.size() != 4) fail(at, "expected: " + head + " k l c");
            MonomialLine m;
            m.is_dx = head == "dx";
            m.kx = parse_int(toks[1], at, "exponent k");
            m.ky = parse_int(toks[2], at, "exponent l");
            if (m.kx < 0 || m.ky < 0) fail(at, "exponents must be non-negative");
            m.coeff = parse_rat(toks[3], at);
            block->push_back(m);
        } else if (head == "center") {
            if (toks.size() != 3) fail(at, "expected: center x y");
            ps.center = {parse_rat(toks[1], at), parse_rat(toks[2], at)};
        } else if (head == "perturb") {
            if (toks.size() != 3 || toks[1] != "degree") fail(at, "expected: perturb degree n");
            const int n = parse_int(toks[2], at, "degree");
            if (n < 2) fail(at, "perturbation degree must be at least 2");
            ps.perturb_degree = n;
        } else if (head == "vary") {
            if (toks.size() != 5) fail(at, "expected: vary side:(+|-) (dx|dy) k l");
            ParsedSystem::Vary v;
            v.side = parse_side_token(toks[1], at);
            if (toks[2] == "dx") v.is_dx = true;
            else if (toks[2] == "dy") v.is_dx = false;
            else fail(at, "expected dx or dy, got '" + toks[2] + "'");
            v.kx = parse_int(toks[3], at, "exponent k");
            v.ky = parse_int(toks[4], at, "exponent l");
            ps.vary = v;
        } else {
            fail(at, "unknown directive '" + head + "'");
        }
    }
    if (!saw_upper || !saw_lower)
        fail(at, "file must define both side:+ and side:- blocks");
    return ps;
}

ParsedSystem parse_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
    return parse_system(in);
}

namespace {

lyapunov::PlanarPoly<Rational> block_poly(const std::vector<MonomialLine>& block, bool want_dx) {
    lyapunov::PlanarPoly<Rational> p;
    for (const auto& m : block)
        if (m.is_dx == want_dx) p.add_term(m.kx, m.ky, m.coeff);
    return p;
}

} // namespace

std::string dump_system(const ParsedSystem& ps) {
    std::ostringstream os;
    if (ps.center) os << "center " << ps.center->first.str() << " " << ps.center->second.str() << "\n";
    if (ps.vary)
        os << "vary side:" << exactalg::side_char(ps.vary->side) << " "
           << (ps.vary->is_dx ? "dx" : "dy") << " " << ps.vary->kx << " " << ps.vary->ky << "\n";
    if (ps.perturb_degree) os << "perturb degree " << *ps.perturb_degree << "\n";
    const auto emit = [&os](const char* header, const std::vector<MonomialLine>& block) {
        os << header << "\n";
        for (bool dx : {true, false}) {
            auto p = block_poly(block, dx);
            for (const auto& [k, c] : p.monomials())
                os << (dx ? "dx " : "dy ") << k.first << " " << k.second << " " << c.str() << "\n";
        }
    };
    emit("side:+", ps.upper);
    emit("side:-", ps.lower);
    return os.str();
}

lyapunov::PiecewiseSystem<exactalg::ParamJet> to_symbolic(const ParsedSystem& ps) {
    using lyapunov::PlanarPoly;
    PlanarPoly<Rational> udx = block_poly(ps.upper, true), udy = block_poly(ps.upper, false);
    PlanarPoly<Rational> ldx = block_poly(ps.lower, true), ldy = block_poly(ps.lower, false);

    if (ps.center) {
        // Normalize with the lower side's linearization; fall back to the
        // upper one.  Both transformed halves must verify exactly.
        lyapunov::NormalFormRecord<Rational> rec;
        try {
            rec = lyapunov::to_normal_form(ldx, ldy, ps.center->first, ps.center->second).record;
        } catch (const MathError&) {
            rec = lyapunov::to_normal_form(udx, udy, ps.center->first, ps.center->second).record;
        }
        const auto apply = [&rec](const PlanarPoly<Rational>& dx, const PlanarPoly<Rational>& dy) {
            PlanarPoly<Rational> sdx = dx.shifted(rec.cx, rec.cy).substituted(rec.b11, rec.b12,
                                                                              rec.b21, rec.b22);
            PlanarPoly<Rational> sdy = dy.shifted(rec.cx, rec.cy).substituted(rec.b11, rec.b12,
                                                                              rec.b21, rec.b22);
            const Rational a_over_c = rec.b12 / rec.b22;
            PlanarPoly<Rational> ndx =
                (sdx - sdy.scaled(a_over_c)).scaled(Rational(1) / rec.omega);
            PlanarPoly<Rational> ndy = sdy.scaled(Rational(1) / (rec.b22 * rec.omega));
            return std::pair(std::move(ndx), std::move(ndy));
        };
        auto up = apply(udx, udy);
        auto lo = apply(ldx, ldy);
        if (rec.side_swap) std::swap(up, lo);
        udx = std::move(up.first); udy = std::move(up.second);
        ldx = std::move(lo.first); ldy = std::move(lo.second);
    }

    lyapunov::HalfSystem<Rational> up(std::move(udx), std::move(udy), Side::upper);
    lyapunov::HalfSystem<Rational> lo(std::move(ldx), std::move(ldy), Side::lower);
    if (ps.perturb_degree) return lyapunov::attach_perturbation(up, lo, *ps.perturb_degree);
    return lyapunov::lift_piecewise(up, lo);
}

filippov::NumericSystem to_numeric(const ParsedSystem& ps, filippov::Real eps) {
    filippov::RawPiecewiseField raw;
    const auto fill = [](std::vector<std::tuple<int, int, filippov::Real>>& out,
                         const std::vector<MonomialLine>& block, bool want_dx) {
        for (const auto& m : block)
            if (m.is_dx == want_dx) out.emplace_back(m.kx, m.ky, m.coeff.to_long_double());
    };
    fill(raw.up_dx, ps.upper, true);
    fill(raw.up_dy, ps.upper, false);
    fill(raw.lo_dx, ps.lower, true);
    fill(raw.lo_dy, ps.lower, false);
    if (eps != 0.0L) {
        if (!ps.vary) throw ParseError(0, 0, "eps given but the file has no vary directive");
        auto& dst = ps.vary->side == Side::upper ? (ps.vary->is_dx ? raw.up_dx : raw.up_dy)
                                                 : (ps.vary->is_dx ? raw.lo_dx : raw.lo_dy);
        dst.emplace_back(ps.vary->kx, ps.vary->ky, eps);
    }
    if (ps.center)
        return filippov::normalize_numeric(raw, ps.center->first.to_long_double(),
                                           ps.center->second.to_long_double());
    return filippov::make_numeric(raw);
}

} // namespace cycleforge::io
