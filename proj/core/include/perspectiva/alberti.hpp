#pragma once

#include <vector>

#include "perspectiva/projector.hpp"

// Alberti's costruzione legittima, built entirely with compass-and-rule
// steps on the picture surface, no three-dimensional projection involved.
//
// Coordinates here are centimetres on the canvas: u measured from the
// vertical midline (the vanishing point sits at u = 0), w measured up
// from the bottom edge. The pavement of square tiles starts at the bottom
// edge and recedes towards the vanishing point.

namespace perspectiva {

struct AlbertiInput {
    double canvas_side = 0.0;        // cm, square canvas
    double viewer_distance_D = 0.0;  // cm
    double vp_height = 0.0;          // cm above the bottom edge
    int tile_count = 0;              // tiles across and into depth
    double tile_side_s = 0.0;        // cm, true tile side on the floor
};

// vp_height picked as canvas_side / 2, Alberti's centric point.
AlbertiInput make_alberti_input(double canvas_side, double viewer_distance_D,
                                int tile_count, double tile_side_s);

std::vector<Violation> validate(const AlbertiInput& input);

// Step one: join each of the tile_count + 1 base points, spaced a true
// tile side apart and centred on the midline, with the vanishing point.
std::vector<CanvasSegment> step1_orthogonals(const AlbertiInput& input);

// Step two: apparent heights of the successive transversal lines above
// the base, h_i = vp_height * (i*s) / (D + i*s) for i = 1..tile_count.
std::vector<double> step2_heights(const AlbertiInput& input);

struct AlbertiGrid {
    AlbertiInput input;
    std::vector<CanvasSegment> orthogonal_images;   // base point to VP
    std::vector<double> transversal_heights;        // h_1..h_n
    std::vector<CanvasSegment> transversal_segments;  // includes the base row
    std::vector<CanvasSegment> diagonals;           // first tile's diagonal
    CanvasPoint vp;                // (0, vp_height)
    CanvasPoint distance_point_A;  // on the horizon, D right of the VP
    // Grid crossings, row-major from the base row, tile_count+1 per row.
    std::vector<CanvasPoint> corners;

    // Everything drawable in one list (orthogonals, transversals,
    // diagonals), the form the measuring routine below accepts.
    std::vector<CanvasSegment> all_segments() const;
};

// Step three: assemble the grid and the distance point check of its
// correctness (the tile diagonals line up and strike the horizon at A).
AlbertiGrid step3_assemble(const AlbertiInput& input);

// Recover the viewer distance from a finished drawing: extend a
// diagonal-styled segment to the horizontal line at horizon_height and
// measure how far from the vanishing point it strikes. The vanishing
// point itself is taken from the meet of two non-horizontal tile edges.
// Units follow the drawing's own coordinates.
double distance_from_diagonal(const std::vector<CanvasSegment>& drawing,
                              double horizon_height);

}  // namespace perspectiva
