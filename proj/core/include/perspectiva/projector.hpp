#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "perspectiva/scene.hpp"

// Forward projection of whole scenes onto the canvas.
//
// Canvas coordinates in this module are the normalised ones of the
// projective layer: origin at the point straight in front of the eye, one
// unit equals the eye-canvas distance D. Multiply by D for centimetres on
// the physical canvas.

namespace perspectiva {

// Anything nearer than this (normalised depth) is cut off before the
// division by depth, so images stay finite.
inline constexpr double kClipEpsilon = 1e-9;

enum class Style { beam, tile_edge, diagonal, figure, overlay };

const char* style_name(Style s);

struct CanvasSegment {
    CanvasPoint start;
    CanvasPoint end;
    std::string source_id;
    Style style = Style::beam;
};

struct Rejection {
    std::string reason;  // "behind viewer" or "degenerate ray"
};

// Projects the physical segment a-b. Parts behind the eye are clipped at
// the kClipEpsilon plane; a segment lying on one sight ray has a single
// point as image and is rejected instead.
std::variant<CanvasSegment, Rejection> project_segment(const ViewerFrame& frame,
                                                       const Point3& a, const Point3& b,
                                                       std::string source_id = {},
                                                       Style style = Style::beam);

struct ImageLine {
    std::string source_id;
    CanvasLine line;  // exact projective image of an unbounded scene line
};

// One family of mutually parallel members sharing a direction class.
// `point` comes straight from the direction; `meet_deviation` is the
// worst gap between that and the pairwise meets of member images, the
// independent derivation. A healthy projection keeps both in agreement.
struct FamilyEntry {
    Direction direction;  // representative (first member seen)
    CanvasElement point = CanvasPoint{};
    int members = 0;
    std::optional<double> meet_deviation;
    bool consistent = true;
};

enum class DistancePointStatus { present, no_floor, tiles_not_square };

// Meet of a floor tile diagonal with the horizon. For square tiles its
// horizontal offset from the principal vanishing point, in centimetres on
// the canvas, reproduces the viewer distance D.
struct DistancePoint {
    CanvasPoint point;
    double eye_distance_cm = 0.0;
};

struct ProjectionReport {
    ViewerFrame frame;
    double braccio_cm = kDefaultBraccioCm;
    std::vector<CanvasSegment> segments;
    std::vector<ImageLine> image_lines;
    std::map<std::string, FamilyEntry> vanishing_points;  // keyed by direction class
    CanvasLine horizon_line;
    std::optional<DistancePoint> distance_point;
    DistancePointStatus distance_point_status = DistancePointStatus::no_floor;
    // Projected floor grid crossings, row-major (near row first), all
    // floors concatenated. Matches the corner list of the two-dimensional
    // construction for the same pavement.
    std::vector<CanvasPoint> tile_corners;
    int clipped_count = 0;
};

ProjectionReport project_scene(const Scene& scene);

// Accessor that insists on a usable distance point.
DistancePoint distance_point(const ProjectionReport& report);

// Key under which a direction is filed in the vanishing point table:
// components divided by the first nonzero one, rounded to `digits`
// decimals. Coarser digits merge nearby directions into one family.
std::string direction_class_key(const Direction& d, int digits = 12);

// The vanishing point table alone, with the member cross-check, grouped
// at the given key resolution. project_scene uses digits = 12.
std::map<std::string, FamilyEntry> analyze_families(const Scene& scene, int merge_digits = 12);

}  // namespace perspectiva
