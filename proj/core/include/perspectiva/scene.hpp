#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perspectiva/projective.hpp"

// Physical scenes in front of a standing viewer.
//
// Physical coordinates are centimetres: x to the viewer's right, y the
// depth away from the eye, z the height above the floor. The eye stands at
// (0, 0, H) and looks along +y through a canvas erected in the plane
// y = D. normalize() moves the eye to the origin and rescales uniformly by
// 1/D so the canvas becomes y = 1, the frame the projective layer works in.

namespace perspectiva {

// Florentine braccio. Six of them make the canonical square canvas side.
inline constexpr double kDefaultBraccioCm = 58.0;

struct ViewerFrame {
    double eye_height_H = 0.0;      // cm above the floor
    double canvas_distance_D = 0.0; // cm from eye to canvas plane
    double canvas_width = 0.0;      // cm
    double canvas_height = 0.0;     // cm
    // Height of the canvas bottom edge above the floor. Zero means the
    // painting "opens at ground level" and the vanishing point sits
    // exactly eye_height_H above the bottom edge.
    double canvas_base_height = 0.0;

    bool canvas_base_on_floor() const { return canvas_base_height == 0.0; }
};

struct Interval {
    double t0 = 0.0;
    double t1 = 0.0;
};

struct SceneLine {
    Point3 anchor;        // physical cm
    Direction direction;  // nonzero; unitless
    // Parameter range drawn as anchor + t * direction. Without it the
    // line is treated as unbounded.
    std::optional<Interval> extent;
};

// Square-ruled (or rectangular) pavement. The grid starts at the canvas
// plane and recedes rows * tile_depth_s_y deep; columns are centred on the
// viewer's axis, shifted right by origin_offset.
struct TiledFloor {
    double tile_width_s_x = 0.0;  // cm
    double tile_depth_s_y = 0.0;  // cm
    int columns = 0;
    int rows = 0;
    double origin_offset = 0.0;   // cm

    bool square() const { return tile_width_s_x == tile_depth_s_y; }
};

struct StandingFigure {
    double base_x = 0.0;      // cm, lateral
    double base_depth = 0.0;  // cm from the eye along +y
    double height = 0.0;      // cm
    std::string label;
};

struct Scene {
    ViewerFrame frame;
    std::vector<SceneLine> lines;
    std::vector<TiledFloor> floors;
    std::vector<StandingFigure> figures;
    double braccio_cm = kDefaultBraccioCm;
};

Point3 normalize(const ViewerFrame& frame, const Point3& physical);
Point3 denormalize(const ViewerFrame& frame, const Point3& normalized);

struct Violation {
    std::string field;
    std::string rule;
};

// Empty result means the scene satisfies every structural rule
// (positive viewer measurements, nonzero line directions, positive tile
// and figure dimensions).
std::vector<Violation> validate(const Scene& scene);

double braccia_to_cm(double braccia, double braccio_cm = kDefaultBraccioCm);
double cm_to_braccia(double cm, double braccio_cm = kDefaultBraccioCm);

}  // namespace perspectiva
