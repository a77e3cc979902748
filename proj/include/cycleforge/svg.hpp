#pragma once

#include "cycleforge/trajectory.hpp"

#include <string>
#include <vector>

namespace cycleforge::io {

/// Standalone SVG phase portrait: trajectories as polylines plus the
/// switching line colored by classification (crossing grey, sliding and
/// escaping green, bold).  Fixed 800x800 viewBox; the data-to-screen
/// transform is computed from the drawn geometry with a 5% margin.
/// Hand-emitted markup, deterministic output.
struct PortraitStyle {
    int size = 800;
    double margin = 0.05;
};

std::string render_portrait(const filippov::NumericSystem& sys,
                            const std::vector<filippov::Trajectory>& trajectories,
                            const PortraitStyle& style = {});

} // namespace cycleforge::io
