#include "cycleforge/sysfile.hpp"

#include "support.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace cycleforge;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CYCLEFORGE_CLI) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("parse errors carry line and column") {
    std::istringstream empty("");
    CHECK_THROWS_AS(io::parse_system(empty), ParseError);

    std::istringstream bad("side:+\ndx 1 0 nope\n");
    try {
        io::parse_system(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("rational literal") != std::string::npos);
    }

    std::istringstream unknown("wibble 3\n");
    CHECK_THROWS_AS(io::parse_system(unknown), ParseError);

    std::istringstream orphan("dx 1 0 1\n");
    CHECK_THROWS_AS(io::parse_system(orphan), ParseError);
}

TEST_CASE("dump round-trips to an identical structure") {
    for (const char* name : {"komquar_cub", "komquar_5_perturbed", "palomba"}) {
        std::ifstream in(testsupport::fixture(name));
        REQUIRE(in.good());
        const auto ps = io::parse_system(in);
        const std::string text = io::dump_system(ps);
        std::istringstream again(text);
        const auto ps2 = io::parse_system(again);
        CHECK(io::dump_system(ps2) == text);
        CHECK(ps2.center == ps.center);
        CHECK(ps2.perturb_degree == ps.perturb_degree);
    }
}

TEST_CASE("symbolic conversion enforces the normal form") {
    std::istringstream not_normal("side:+\ndx 0 1 -2\ndy 1 0 1\nside:-\ndx 0 1 -1\ndy 1 0 1\n");
    const auto ps = io::parse_system(not_normal);
    CHECK_THROWS_AS(io::to_symbolic(ps), NormalFormError);
}

TEST_CASE("cli: lyap prints the exact gradients") {
    const auto r = run_cli("lyap --order 1 " + testsupport::fixture("komquar_cub_perturbed"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("L(1) = 0") != std::string::npos);
    CHECK(r.out.find("(-2/3)*a-(1,1) + (2/3)*a+(1,1) + (-4/3)*b-(0,2) + (-2/3)*b-(2,0) + "
                     "(4/3)*b+(0,2) + (2/3)*b+(2,0)") != std::string::npos);
}

TEST_CASE("cli: byte-identical output across repeated runs") {
    const std::string cmd = "rank --order 3 " + testsupport::fixture("komquar_cub_perturbed");
    const auto a = run_cli(cmd), b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("rank 3") != std::string::npos);
}

TEST_CASE("cli: dump round-trip is byte-identical") {
    const auto once = run_cli("dump " + testsupport::fixture("komquar_cub"));
    CHECK(once.exit_code == 0);
    // feed the dump back through a temp file
    const std::string tmp = "/tmp/cycleforge_dump_roundtrip.txt";
    {
        std::ofstream out(tmp);
        out << once.out;
    }
    const auto twice = run_cli("dump " + tmp);
    CHECK(twice.exit_code == 0);
    CHECK(twice.out == once.out);
}

TEST_CASE("cli: exit codes distinguish usage, parse, and math errors") {
    CHECK(run_cli("lyap /nonexistent/file").exit_code == 1);
    CHECK(run_cli("bogus-subcommand").exit_code != 0);
    // NoSignChange is a math error: exit 2
    const auto r = run_cli("find-cycle " + testsupport::fixture("palomba") +
                           " --bracket 0.01,0.2");
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli: classify reports the Palomba segment in original coordinates") {
    const auto r = run_cli("classify " + testsupport::fixture("palomba") +
                           " --eps 0.5 --range -0.5,0.5 --samples 10");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("# segment escaping [0.6, 0.7]") != std::string::npos);
}

TEST_CASE("cli: simulate emits the trajectory csv header") {
    const auto r = run_cli("simulate " + testsupport::fixture("palomba") +
                           " --start 0.75,0.5 --t-max 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("t,x,y,zone", 0) == 0);
    CHECK(r.out.find("upper") != std::string::npos);
}

TEST_CASE("cli: portrait writes a deterministic svg") {
    const std::string svg1 = "/tmp/cycleforge_p1.svg", svg2 = "/tmp/cycleforge_p2.svg";
    const std::string args = "portrait " + testsupport::fixture("palomba_eps05") +
                             " --start 0.8,0.5 --t-max 6 --out ";
    CHECK(run_cli(args + svg1).exit_code == 0);
    CHECK(run_cli(args + svg2).exit_code == 0);
    std::ifstream f1(svg1), f2(svg2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().find("<svg xmlns") != std::string::npos);
    CHECK(s1.str().find("viewBox=\"0 0 800 800\"") != std::string::npos);
    CHECK(s1.str().find("#1fa11f") != std::string::npos);  // sliding drawn green
    CHECK(s1.str().find("<polyline") != std::string::npos);
}

TEST_CASE("cli: scan table is deterministic and ordered") {
    const std::string cmd = "scan-pseudo-hopf " + testsupport::fixture("palomba") +
                            " --range -0.5,0.5 --steps 4";
    const auto a = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out.rfind("eps,seg_lo,seg_hi,seg_kind,cycle_rho,stability", 0) == 0);
    const auto b = run_cli(cmd);
    CHECK(a.out == b.out);
    // the eps = 0 row reports no segment and no cycle
    CHECK(a.out.find("0,,,none,,none") != std::string::npos);
}
