#include "perspectiva/alberti.hpp"

#include <cmath>
#include <string>

#include "perspectiva/errors.hpp"

namespace perspectiva {

namespace {

std::vector<double> base_points(const AlbertiInput& in) {
    std::vector<double> xs;
    const double left = -in.tile_count * in.tile_side_s / 2.0;
    for (int j = 0; j <= in.tile_count; ++j) xs.push_back(left + j * in.tile_side_s);
    return xs;
}

// u of the orthogonal through base point x at height w, on its way up to
// the vanishing point at (0, vp_height)
double orthogonal_u(double x, double w, double vp_height) {
    return x * (1.0 - w / vp_height);
}

void require_valid(const AlbertiInput& in) {
    const auto violations = validate(in);
    if (!violations.empty()) {
        std::string msg;
        for (size_t i = 0; i < violations.size(); ++i) {
            if (i) msg += "; ";
            msg += violations[i].field + " " + violations[i].rule;
        }
        throw DomainError("invalid-input", msg);
    }
}

bool horizontal(const CanvasSegment& s) {
    const double dw = std::fabs(s.end.w - s.start.w);
    const double scale = std::max({1.0, std::fabs(s.start.w), std::fabs(s.end.w),
                                   std::fabs(s.start.u), std::fabs(s.end.u)});
    return dw <= kRelTol * scale;
}

CanvasLine carrier(const CanvasSegment& s) {
    return join(CanvasElement{s.start}, CanvasElement{s.end});
}

}  // namespace

AlbertiInput make_alberti_input(double canvas_side, double viewer_distance_D,
                                int tile_count, double tile_side_s) {
    return {canvas_side, viewer_distance_D, canvas_side / 2.0, tile_count, tile_side_s};
}

std::vector<Violation> validate(const AlbertiInput& in) {
    std::vector<Violation> out;
    if (!(in.canvas_side > 0.0)) out.push_back({"canvas_side", "must be positive"});
    if (!(in.viewer_distance_D > 0.0))
        out.push_back({"viewer_distance_D", "must be positive"});
    if (!(in.vp_height > 0.0)) out.push_back({"vp_height", "must be positive"});
    if (in.tile_count < 0) out.push_back({"tile_count", "must not be negative"});
    if (!(in.tile_side_s > 0.0)) out.push_back({"tile_side_s", "must be positive"});
    if (in.canvas_side > 0.0 && in.tile_side_s > 0.0 &&
        in.tile_count * in.tile_side_s > in.canvas_side * (1.0 + kRelTol))
        out.push_back({"tile_count", "tiled base must not exceed the canvas side"});
    return out;
}

std::vector<CanvasSegment> step1_orthogonals(const AlbertiInput& in) {
    require_valid(in);
    std::vector<CanvasSegment> out;
    const auto xs = base_points(in);
    for (size_t j = 0; j < xs.size(); ++j)
        out.push_back({{xs[j], 0.0}, {0.0, in.vp_height},
                       "ortho" + std::to_string(j), Style::tile_edge});
    return out;
}

std::vector<double> step2_heights(const AlbertiInput& in) {
    require_valid(in);
    std::vector<double> hs;
    for (int i = 1; i <= in.tile_count; ++i) {
        const double depth = i * in.tile_side_s;
        hs.push_back(in.vp_height * depth / (in.viewer_distance_D + depth));
    }
    return hs;
}

AlbertiGrid step3_assemble(const AlbertiInput& in) {
    AlbertiGrid grid;
    grid.input = in;
    grid.orthogonal_images = step1_orthogonals(in);
    grid.transversal_heights = step2_heights(in);
    grid.vp = {0.0, in.vp_height};
    grid.distance_point_A = {in.viewer_distance_D, in.vp_height};

    const auto xs = base_points(in);
    for (int i = 0; i <= in.tile_count; ++i) {
        const double w = i == 0 ? 0.0 : grid.transversal_heights[i - 1];
        grid.transversal_segments.push_back({{orthogonal_u(xs.front(), w, in.vp_height), w},
                                             {orthogonal_u(xs.back(), w, in.vp_height), w},
                                             "trans" + std::to_string(i),
                                             Style::tile_edge});
        for (double x : xs) grid.corners.push_back({orthogonal_u(x, w, in.vp_height), w});
    }
    if (in.tile_count >= 1) {
        const double h1 = grid.transversal_heights[0];
        grid.diagonals.push_back({{xs[0], 0.0},
                                  {orthogonal_u(xs[1], h1, in.vp_height), h1},
                                  "diag",
                                  Style::diagonal});
    }
    return grid;
}

std::vector<CanvasSegment> AlbertiGrid::all_segments() const {
    std::vector<CanvasSegment> out;
    out.insert(out.end(), orthogonal_images.begin(), orthogonal_images.end());
    out.insert(out.end(), transversal_segments.begin(), transversal_segments.end());
    out.insert(out.end(), diagonals.begin(), diagonals.end());
    return out;
}

double distance_from_diagonal(const std::vector<CanvasSegment>& drawing,
                              double horizon_height) {
    const CanvasSegment* diagonal = nullptr;
    for (const CanvasSegment& s : drawing)
        if (s.style == Style::diagonal) {
            diagonal = &s;
            break;
        }
    if (!diagonal)
        throw DomainError("no-diagonal", "drawing has no diagonal-styled segment");
    if (horizontal(*diagonal))
        throw DomainError("no-meet", "diagonal is parallel to the horizon");

    // the vanishing point, from two converging tile edges
    const CanvasSegment* first = nullptr;
    CanvasElement vp = CanvasPoint{};
    bool have_vp = false;
    for (const CanvasSegment& s : drawing) {
        if (s.style != Style::tile_edge || horizontal(s)) continue;
        if (!first) {
            first = &s;
            continue;
        }
        const CanvasLine l1 = carrier(*first);
        const CanvasLine l2 = carrier(s);
        if (line_equiv(l1, l2)) continue;
        const CanvasElement m = meet(l1, l2);
        if (!is_proper(m)) continue;
        vp = m;
        have_vp = true;
        break;
    }
    if (!have_vp)
        throw DomainError("no-vanishing-point",
                          "drawing lacks two converging tile edges");

    const CanvasLine horizon_at{0.0, -horizon_height, 1.0};  // w == horizon_height
    const CanvasElement a = meet(carrier(*diagonal), horizon_at);
    if (!is_proper(a))
        throw DomainError("no-meet", "diagonal is parallel to the horizon");
    const CanvasPoint A = proper(a);
    const CanvasPoint V = proper(vp);
    return std::hypot(A.u - V.u, A.w - V.w);
}

}  // namespace perspectiva
