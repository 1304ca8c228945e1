#include "perspectiva/scene.hpp"

#include <string>

namespace perspectiva {

Point3 normalize(const ViewerFrame& frame, const Point3& p) {
    const double d = frame.canvas_distance_D;
    return {p.x / d, p.y / d, (p.z - frame.eye_height_H) / d};
}

Point3 denormalize(const ViewerFrame& frame, const Point3& p) {
    const double d = frame.canvas_distance_D;
    return {p.x * d, p.y * d, p.z * d + frame.eye_height_H};
}

std::vector<Violation> validate(const Scene& scene) {
    std::vector<Violation> out;
    const auto bad = [&out](std::string field, std::string rule) {
        out.push_back({std::move(field), std::move(rule)});
    };

    const ViewerFrame& f = scene.frame;
    if (!(f.eye_height_H > 0.0)) bad("frame.eye_height_H", "must be positive");
    if (!(f.canvas_distance_D > 0.0)) bad("frame.canvas_distance_D", "must be positive");
    if (!(f.canvas_width > 0.0)) bad("frame.canvas_width", "must be positive");
    if (!(f.canvas_height > 0.0)) bad("frame.canvas_height", "must be positive");
    if (!(scene.braccio_cm > 0.0)) bad("braccio_cm", "must be positive");

    for (size_t i = 0; i < scene.lines.size(); ++i) {
        const Direction& d = scene.lines[i].direction;
        if (d.dx == 0.0 && d.dy == 0.0 && d.dz == 0.0)
            bad("lines[" + std::to_string(i) + "].direction", "must be nonzero");
    }
    for (size_t i = 0; i < scene.floors.size(); ++i) {
        const TiledFloor& t = scene.floors[i];
        const std::string at = "floors[" + std::to_string(i) + "]";
        if (!(t.tile_width_s_x > 0.0)) bad(at + ".tile_width_s_x", "must be positive");
        if (!(t.tile_depth_s_y > 0.0)) bad(at + ".tile_depth_s_y", "must be positive");
        if (t.columns <= 0) bad(at + ".columns", "must be positive");
        if (t.rows <= 0) bad(at + ".rows", "must be positive");
    }
    for (size_t i = 0; i < scene.figures.size(); ++i) {
        const StandingFigure& g = scene.figures[i];
        const std::string at = "figures[" + std::to_string(i) + "]";
        if (!(g.height > 0.0)) bad(at + ".height", "must be positive");
        if (!(g.base_depth > 0.0)) bad(at + ".base_depth", "must be positive");
    }
    return out;
}

double braccia_to_cm(double braccia, double braccio_cm) { return braccia * braccio_cm; }

double cm_to_braccia(double cm, double braccio_cm) { return cm / braccio_cm; }

}  // namespace perspectiva
