#include "cycleforge/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cycleforge::io {

using filippov::NumericSystem;
using filippov::Real;
using filippov::SigmaKind;
using filippov::Trajectory;
using filippov::Zone;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

const char* zone_color(Zone z) {
    switch (z) {
        case Zone::upper: return "#30506d";
        case Zone::lower: return "#8c4a32";
        case Zone::sliding: return "#1a7a1a";
    }
    return "#000000";
}

} // namespace

std::string render_portrait(const NumericSystem& sys,
                            const std::vector<Trajectory>& trajectories,
                            const PortraitStyle& style) {
    // bounding box over everything drawn
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    bool first = true;
    for (const auto& tr : trajectories)
        for (const auto& s : tr.samples) {
            const double x = (double)s.x, y = (double)s.y;
            if (first) { xmin = xmax = x; ymin = ymax = y; first = false; }
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    if (xmax - xmin < 1e-12) { xmin -= 1; xmax += 1; }
    if (ymax - ymin < 1e-12) { ymin -= 1; ymax += 1; }
    const double mx = (xmax - xmin) * style.margin, my = (ymax - ymin) * style.margin;
    xmin -= mx; xmax += mx; ymin -= my; ymax += my;

    const double w = style.size, h = style.size;
    const double sx = w / (xmax - xmin), sy = h / (ymax - ymin);
    const auto X = [&](double x) { return (x - xmin) * sx; };
    const auto Y = [&](double y) { return h - (y - ymin) * sy; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << style.size << " "
       << style.size << "\">\n";
    os << "<rect width=\"" << style.size << "\" height=\"" << style.size
       << "\" fill=\"#ffffff\"/>\n";

    // switching line, colored by classification in fixed-width slabs
    if (ymin < 0 && ymax > 0) {
        const int slabs = 256;
        for (int i = 0; i < slabs; ++i) {
            const double a = xmin + (xmax - xmin) * i / slabs;
            const double b = xmin + (xmax - xmin) * (i + 1) / slabs;
            const auto c = filippov::classify_point(sys, (Real)((a + b) / 2));
            const bool slide = c.kind == SigmaKind::sliding || c.kind == SigmaKind::escaping;
            os << "<line x1=\"" << fmt(X(a)) << "\" y1=\"" << fmt(Y(0)) << "\" x2=\""
               << fmt(X(b)) << "\" y2=\"" << fmt(Y(0)) << "\" stroke=\""
               << (slide ? "#1fa11f" : "#b0b0b0") << "\" stroke-width=\""
               << (slide ? "5" : "2") << "\"/>\n";
        }
    }

    for (const auto& tr : trajectories) {
        if (tr.samples.empty()) continue;
        // split the polyline at zone changes so each piece is colored
        std::size_t i = 0;
        while (i < tr.samples.size()) {
            const Zone z = tr.samples[i].zone;
            std::ostringstream pts;
            std::size_t j = i;
            for (; j < tr.samples.size() && tr.samples[j].zone == z; ++j)
                pts << fmt(X((double)tr.samples[j].x)) << "," << fmt(Y((double)tr.samples[j].y))
                    << " ";
            os << "<polyline fill=\"none\" stroke=\"" << zone_color(z)
               << "\" stroke-width=\"1.4\" points=\"" << pts.str() << "\"/>\n";
            i = j > i ? j : i + 1;
        }
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace cycleforge::io
