// cycleforge: generalized Lyapunov constants, cyclicity rank analysis, and a
// Filippov simulator for planar piecewise polynomial systems split by y = 0.

#include "cycleforge/cycle_search.hpp"
#include "cycleforge/cyclicity.hpp"
#include "cycleforge/svg.hpp"
#include "cycleforge/sysfile.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>

namespace {

using namespace cycleforge;
using filippov::Real;

constexpr const char* kVersion = "cycleforge 0.1.0";

std::string shortest(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}
std::string shortest(Real v) { return shortest(static_cast<double>(v)); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::pair<double, double> parse_pair(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError(std::string(what) + " expects 'a,b'");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string(what) + " expects numbers 'a,b'");
    }
}

std::string trajectory_csv(const filippov::Trajectory& tr,
                           const std::optional<filippov::CoordinateMap>& back) {
    std::string csv = "t,x,y,zone\n";
    for (const auto& s : tr.samples) {
        Real t = s.t, x = s.x, y = s.y;
        auto zone = s.zone;
        if (back) {
            const auto p = back->to_original(x, y);
            x = p[0]; y = p[1];
            t = t / back->omega;
            if (back->side_swap && zone != filippov::Zone::sliding)
                zone = zone == filippov::Zone::upper ? filippov::Zone::lower
                                                     : filippov::Zone::upper;
        }
        csv += shortest(t) + "," + shortest(x) + "," + shortest(y) + "," +
               filippov::zone_name(zone) + "\n";
    }
    return csv;
}

Real to_original_x(const filippov::NumericSystem& sys, Real x_working) {
    if (!sys.back) return x_working;
    return sys.back->to_original(x_working, 0.0L)[0];
}

int run_lyap(const std::string& file, int order) {
    const auto sys = io::to_symbolic(io::parse_system_file(file));
    const auto ds = lyapunov::displacement_series(sys, order + 1);
    for (int k = 1; k <= order; ++k) {
        const auto& L = ds.L(k);
        std::cout << "L(" << k << ") = " << L.constant().str() << "\n";
        std::cout << "  grad: " << cyclicity::gradient_text(L, sys.params) << "\n";
    }
    return 0;
}

int run_rank(const std::string& file, int order, bool pseudo_hopf,
             const std::string& emit_jacobian) {
    const auto sys = io::to_symbolic(io::parse_system_file(file));
    const auto rep = cyclicity::analyze(sys, order, pseudo_hopf);
    std::cout << cyclicity::report_render(rep);
    if (!emit_jacobian.empty()) write_file(emit_jacobian, cyclicity::jacobian_csv(rep));
    return 0;
}

int run_classify(const std::string& file, double eps, std::pair<double, double> range,
                 int samples) {
    const auto sys = io::to_numeric(io::parse_system_file(file), (Real)eps);
    std::cout << "x,kind,upper_normal_speed,lower_normal_speed\n";
    for (int i = 0; i <= samples; ++i) {
        const Real x = (Real)range.first + (Real)(range.second - range.first) * i / samples;
        const auto c = filippov::classify_point(sys, x);
        std::cout << shortest(to_original_x(sys, x)) << "," << filippov::sigma_kind_name(c.kind)
                  << "," << shortest(c.upper_normal_speed) << ","
                  << shortest(c.lower_normal_speed) << "\n";
    }
    const auto segs = filippov::find_sigma_segments(sys, (Real)range.first, (Real)range.second);
    for (const auto& seg : segs)
        std::cout << "# segment " << filippov::sigma_kind_name(seg.kind) << " ["
                  << shortest(to_original_x(sys, seg.lo)) << ", "
                  << shortest(to_original_x(sys, seg.hi)) << "]\n";
    return 0;
}

int run_simulate(const std::string& file, double eps, std::pair<double, double> start,
                 double t_max, bool backward, const std::string& out) {
    const auto sys = io::to_numeric(io::parse_system_file(file), (Real)eps);
    filippov::IntegrateOptions opt;
    opt.t_max = (Real)t_max;
    opt.direction = backward ? -1.0L : 1.0L;
    Real x = (Real)start.first, y = (Real)start.second;
    if (sys.back) {
        const auto p = sys.back->from_original(x, y);
        x = p[0]; y = p[1];
    }
    const auto tr = filippov::integrate(sys, x, y, opt);
    const std::string csv = trajectory_csv(tr, sys.back);
    if (out.empty()) std::cout << csv;
    else write_file(out, csv);
    std::cerr << "stop: " << filippov::stop_reason_name(tr.stop) << ", events: "
              << tr.events.size() << "\n";
    return 0;
}

int run_find_cycle(const std::string& file, double eps, std::pair<double, double> bracket,
                   const std::string& out) {
    const auto sys = io::to_numeric(io::parse_system_file(file), (Real)eps);
    const auto cyc = filippov::find_crossing_cycle(sys, (Real)bracket.first, (Real)bracket.second);
    std::cout << "rho = " << shortest(cyc.rho) << "\n";
    std::cout << "section = " << (cyc.section_sign > 0 ? "+" : "-") << "\n";
    std::cout << "residual = " << shortest(cyc.residual) << "\n";
    std::cout << "closure_error = " << shortest(cyc.closure_error) << "\n";
    std::cout << "stability = " << (cyc.stable ? "stable" : "unstable") << "\n";
    if (sys.back) {
        Real xlo = 0, xhi = 0;
        bool first = true;
        for (const auto& s : cyc.cycle.samples) {
            if (std::fabs((double)s.y) > 1e-9) continue;
            const Real xo = to_original_x(sys, s.x);
            if (first) { xlo = xhi = xo; first = false; }
            xlo = std::min(xlo, xo); xhi = std::max(xhi, xo);
        }
        std::cout << "sigma_crossings_original = " << shortest(xlo) << "," << shortest(xhi)
                  << "\n";
    }
    if (!out.empty()) write_file(out, trajectory_csv(cyc.cycle, sys.back));
    return 0;
}

int run_scan(const std::string& file, std::pair<double, double> range, int steps) {
    const auto ps = io::parse_system_file(file);
    if (!ps.vary) throw ParseError(0, 0, "scan-pseudo-hopf needs a vary directive in the file");
    const auto family = [&ps](Real eps) { return io::to_numeric(ps, eps); };
    const auto rows =
        filippov::pseudo_hopf_scan(family, (Real)range.first, (Real)range.second, steps);
    // endpoints reported in original coordinates when the file was normalized
    const auto sys0 = io::to_numeric(ps, 0.0L);
    std::cout << "eps,seg_lo,seg_hi,seg_kind,cycle_rho,stability\n";
    for (const auto& r : rows) {
        std::cout << shortest(r.eps) << ",";
        if (r.has_segment)
            std::cout << shortest(to_original_x(sys0, r.seg_lo)) << ","
                      << shortest(to_original_x(sys0, r.seg_hi)) << ","
                      << filippov::sigma_kind_name(r.seg_kind);
        else
            std::cout << ",,none";
        std::cout << ",";
        if (r.has_cycle)
            std::cout << shortest(r.cycle_rho) << "," << (r.cycle_stable ? "stable" : "unstable");
        else
            std::cout << ",none";
        std::cout << "\n";
    }
    return 0;
}

int run_portrait(const std::string& file, double eps, const std::vector<std::string>& starts,
                 double t_max, const std::string& out) {
    const auto sys = io::to_numeric(io::parse_system_file(file), (Real)eps);
    filippov::IntegrateOptions opt;
    opt.t_max = (Real)t_max;
    std::vector<filippov::Trajectory> trs;
    std::vector<std::pair<double, double>> seeds;
    for (const auto& s : starts) seeds.push_back(parse_pair(s, "--start"));
    if (seeds.empty())
        for (int i = 1; i <= 4; ++i) seeds.push_back({0.12 * i, 0.0});
    for (auto [x0, y0] : seeds) {
        Real x = (Real)x0, y = (Real)y0;
        if (sys.back) {
            const auto p = sys.back->from_original(x, y);
            x = p[0]; y = p[1];
        }
        try {
            trs.push_back(filippov::integrate(sys, x, y, opt));
        } catch (const MathError& e) {
            std::cerr << "seed (" << x0 << ", " << y0 << "): " << e.what() << "\n";
        }
    }
    write_file(out, io::render_portrait(sys, trs));
    return 0;
}

int run_dump(const std::string& file) {
    std::cout << io::dump_system(io::parse_system_file(file));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Lyapunov constants and Filippov simulation for piecewise "
                 "polynomial planar systems (switching line y = 0)"};
    app.require_subcommand(1);
    std::cerr << kVersion << "\n";

    std::string file, out, emit_jacobian, bracket_s, range_s, start_s;
    std::vector<std::string> starts;
    int order = 14, truncation = 15, samples = 40, steps = 10;
    double eps = 0.0, t_max = 50.0;
    bool no_pseudo_hopf = false, backward = false;
    (void)truncation;

    auto* lyap = app.add_subcommand("lyap", "print Lyapunov constants L(1)..L(K)");
    lyap->add_option("file", file)->required();
    lyap->add_option("--order", order, "number of constants (default 14)");

    auto* rank = app.add_subcommand("rank", "first-order cyclicity rank analysis");
    rank->add_option("file", file)->required();
    rank->add_option("--order", order, "constants analyzed (default 14)");
    rank->add_flag("--no-pseudo-hopf", no_pseudo_hopf, "do not count the sliding-segment cycle");
    rank->add_option("--emit-jacobian", emit_jacobian, "write the Jacobian as CSV");

    auto* classify = app.add_subcommand("classify", "classify switching-line points");
    classify->add_option("file", file)->required();
    classify->add_option("--eps", eps, "offset of the vary monomial");
    classify->add_option("--range", range_s, "x range 'a,b' (working coords, default -1,1)");
    classify->add_option("--samples", samples, "sample count (default 40)");

    auto* simulate = app.add_subcommand("simulate", "integrate one Filippov orbit, CSV output");
    simulate->add_option("file", file)->required();
    simulate->add_option("--eps", eps, "offset of the vary monomial");
    simulate->add_option("--start", start_s, "start point 'x,y' (original coords)")->required();
    simulate->add_option("--t-max", t_max, "time horizon (default 50)");
    simulate->add_flag("--backward", backward, "integrate backward in time");
    simulate->add_option("--out", out, "CSV path (default stdout)");

    auto* find_cycle = app.add_subcommand("find-cycle", "locate a crossing limit cycle");
    find_cycle->add_option("file", file)->required();
    find_cycle->add_option("--eps", eps, "offset of the vary monomial");
    find_cycle->add_option("--bracket", bracket_s, "section radii 'lo,hi'")->required();
    find_cycle->add_option("--out", out, "write the cycle as CSV");

    auto* scan = app.add_subcommand("scan-pseudo-hopf", "sweep the vary parameter");
    scan->add_option("file", file)->required();
    scan->add_option("--range", range_s, "eps range 'a,b'")->required();
    scan->add_option("--steps", steps, "grid intervals (default 10)");

    auto* portrait = app.add_subcommand("portrait", "render a phase portrait SVG");
    portrait->add_option("file", file)->required();
    portrait->add_option("--eps", eps, "offset of the vary monomial");
    portrait->add_option("--start", starts, "seed point 'x,y' (repeatable)");
    portrait->add_option("--t-max", t_max, "time horizon per seed (default 50)");
    portrait->add_option("--out", out, "SVG path")->required();

    auto* dump = app.add_subcommand("dump", "parse and re-print a system file");
    dump->add_option("file", file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(lyap)) return run_lyap(file, order);
        if (app.got_subcommand(rank))
            return run_rank(file, order, !no_pseudo_hopf, emit_jacobian);
        if (app.got_subcommand(classify))
            return run_classify(file, eps,
                                range_s.empty() ? std::pair(-1.0, 1.0)
                                                : parse_pair(range_s, "--range"),
                                samples);
        if (app.got_subcommand(simulate))
            return run_simulate(file, eps, parse_pair(start_s, "--start"), t_max, backward, out);
        if (app.got_subcommand(find_cycle))
            return run_find_cycle(file, eps, parse_pair(bracket_s, "--bracket"), out);
        if (app.got_subcommand(scan))
            return run_scan(file, parse_pair(range_s, "--range"), steps);
        if (app.got_subcommand(portrait)) return run_portrait(file, eps, starts, t_max, out);
        if (app.got_subcommand(dump)) return run_dump(file);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
