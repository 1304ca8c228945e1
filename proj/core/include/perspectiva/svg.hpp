#pragma once

#include <map>
#include <string>

#include "perspectiva/alberti.hpp"
#include "perspectiva/projector.hpp"

// Deterministic SVG rendering. The physical canvas rectangle is fitted
// into the viewport (uniform scale, centred, y pointing up on the canvas
// but down in the SVG), segments are clipped to the viewport, and every
// coordinate is printed with exactly three decimals, so equal inputs give
// byte-equal files.

namespace perspectiva {

struct Stroke {
    std::string color = "#000000";
    double width = 1.0;
    std::string dash;  // stroke-dasharray value, empty for solid
};

std::map<Style, Stroke> default_style_map();

struct RenderOptions {
    int viewport_w = 960;  // px
    int viewport_h = 720;  // px
    double margin = 40.0;  // px around the canvas rectangle
    bool show_horizon = true;
    bool show_vanishing_points = true;
    bool show_improper_labels = false;
    std::map<Style, Stroke> style_map = default_style_map();
};

std::string emit_svg(const ProjectionReport& report, const RenderOptions& options = {});
std::string emit_svg(const AlbertiGrid& grid, const RenderOptions& options = {});

}  // namespace perspectiva
