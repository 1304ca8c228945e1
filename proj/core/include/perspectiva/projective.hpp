#pragma once

#include <variant>

// Projective arithmetic for single-point perspective.
//
// The viewer's eye sits at the origin O. The picture plane ("canvas") is
// y = 1; a scene point (x, y, z) with y > 0 is seen where its sight ray
// crosses that plane. Because every point on one ray through O paints the
// same spot, image locations are homogeneous triples [h0 : h1 : h2] taken
// modulo a nonzero scale. We call such a class a Pixel.
//
// A pixel with h1 != 0 normalises to [u, 1, w] and lands on the canvas at
// (u, w): u grows to the viewer's right, w upward. A pixel with h1 == 0
// has no canvas spot; it is an improper point, the common "point at
// infinity" of a family of parallel canvas lines. Lines on the canvas are
// coefficient triples (a, b, c), also modulo scale, incident with a pixel
// exactly when a*h0 + b*h1 + c*h2 == 0. The horizon is the line w == 0 of
// all vanishing points of horizontal directions.

namespace perspectiva {

// One relative tolerance for every geometric predicate in the library.
inline constexpr double kRelTol = 1e-12;

struct Point3 {
    double x = 0.0;
    double y = 0.0;  // depth, positive in front of the eye
    double z = 0.0;  // height
};

// Homogeneous image coordinates [h0 : h1 : h2], not all zero.
// Stored exactly as produced; use canonicalize() to normalise.
struct Pixel {
    double h0 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
};

// Canvas location (u, w): the class [u, 1, w].
struct CanvasPoint {
    double u = 0.0;
    double w = 0.0;
};

// Point at infinity of the canvas. Encodes the class [u, 0, 1], or the
// single horizontal one [1, 0, 0] when x_axis is set (u is ignored then).
struct ImproperCanvasPoint {
    double u = 0.0;
    bool x_axis = false;
};

using CanvasElement = std::variant<CanvasPoint, ImproperCanvasPoint>;

// Canvas line a*h0 + b*h1 + c*h2 = 0, coefficients modulo scale.
struct CanvasLine {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

struct Direction {
    double dx = 0.0;
    double dy = 0.0;
    double dz = 0.0;
};

bool is_valid(const Pixel& p);  // not all three components zero

Pixel pixel_of(const CanvasPoint& p);           // [u, 1, w]
Pixel pixel_of(const ImproperCanvasPoint& p);   // [u, 0, 1] or [1, 0, 0]
Pixel pixel_of(const CanvasElement& e);

bool is_proper(const CanvasElement& e);
const CanvasPoint& proper(const CanvasElement& e);              // throws on improper
const ImproperCanvasPoint& improper(const CanvasElement& e);    // throws on proper

// Scale-free normal form of a pixel class.
CanvasElement canonicalize(const Pixel& p);

// True when p and q name the same ray class, i.e. are proportional.
bool pixel_equiv(const Pixel& p, const Pixel& q);

// The pixel seen along the sight ray of a scene point. The eye itself
// (the zero point) has no ray and is rejected.
Pixel project_point(const Point3& p);

// Line through two distinct canvas elements / meet of two distinct lines.
CanvasLine join(const CanvasElement& p, const CanvasElement& q);
CanvasElement meet(const CanvasLine& l, const CanvasLine& m);

// Where every line of direction d appears to converge. For horizontal d
// the result lies on the horizon; for d parallel to the canvas plane it
// is improper.
CanvasElement vanishing_point(const Direction& d);

CanvasLine horizon();

bool line_equiv(const CanvasLine& l, const CanvasLine& m);
bool element_equiv(const CanvasElement& p, const CanvasElement& q);

// |a*h0 + b*h1 + c*h2| after scaling line and pixel to canonical size.
double incidence_residual(const CanvasElement& e, const CanvasLine& l);
bool incident(const CanvasElement& e, const CanvasLine& l);

// Scale-free collinearity measure of three canvas points (the sine of the
// spanned angle). Zero means exactly collinear.
double collinearity_residual(const CanvasPoint& p, const CanvasPoint& q,
                             const CanvasPoint& r);

// Euclidean distance where it makes sense; for two finite improper points
// the gap of their u classes; infinite for mixed kinds.
double element_distance(const CanvasElement& p, const CanvasElement& q);

}  // namespace perspectiva
