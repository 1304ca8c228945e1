#include "perspectiva/projective.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "perspectiva/errors.hpp"

namespace perspectiva {

namespace {

double inf_norm3(double a, double b, double c) {
    return std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
}

std::array<double, 3> cross3(double a0, double a1, double a2,
                             double b0, double b1, double b2) {
    return {a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0};
}

void require_valid(const Pixel& p) {
    if (!is_valid(p)) throw DomainError("invalid-pixel", "all three pixel components are zero");
}

}  // namespace

bool is_valid(const Pixel& p) {
    return p.h0 != 0.0 || p.h1 != 0.0 || p.h2 != 0.0;
}

Pixel pixel_of(const CanvasPoint& p) { return {p.u, 1.0, p.w}; }

Pixel pixel_of(const ImproperCanvasPoint& p) {
    if (p.x_axis) return {1.0, 0.0, 0.0};
    return {p.u, 0.0, 1.0};
}

Pixel pixel_of(const CanvasElement& e) {
    return std::visit([](const auto& v) { return pixel_of(v); }, e);
}

bool is_proper(const CanvasElement& e) {
    return std::holds_alternative<CanvasPoint>(e);
}

const CanvasPoint& proper(const CanvasElement& e) {
    if (const auto* p = std::get_if<CanvasPoint>(&e)) return *p;
    throw DomainError("improper-point", "canvas element is a point at infinity");
}

const ImproperCanvasPoint& improper(const CanvasElement& e) {
    if (const auto* p = std::get_if<ImproperCanvasPoint>(&e)) return *p;
    throw DomainError("proper-point", "canvas element is a finite canvas point");
}

CanvasElement canonicalize(const Pixel& p) {
    require_valid(p);
    if (p.h1 != 0.0) return CanvasPoint{p.h0 / p.h1, p.h2 / p.h1};
    if (p.h2 != 0.0) return ImproperCanvasPoint{p.h0 / p.h2, false};
    return ImproperCanvasPoint{0.0, true};
}

bool pixel_equiv(const Pixel& p, const Pixel& q) {
    require_valid(p);
    require_valid(q);
    const auto c = cross3(p.h0, p.h1, p.h2, q.h0, q.h1, q.h2);
    const double scale = inf_norm3(p.h0, p.h1, p.h2) * inf_norm3(q.h0, q.h1, q.h2);
    return inf_norm3(c[0], c[1], c[2]) <= kRelTol * scale;
}

Pixel project_point(const Point3& p) {
    if (p.x == 0.0 && p.y == 0.0 && p.z == 0.0)
        throw DomainError("eye-point", "the eye has no sight ray to itself");
    return {p.x, p.y, p.z};
}

CanvasLine join(const CanvasElement& p, const CanvasElement& q) {
    if (element_equiv(p, q))
        throw DomainError("degenerate-join", "no unique line through coincident points");
    const Pixel a = pixel_of(p);
    const Pixel b = pixel_of(q);
    const auto c = cross3(a.h0, a.h1, a.h2, b.h0, b.h1, b.h2);
    return {c[0], c[1], c[2]};
}

CanvasElement meet(const CanvasLine& l, const CanvasLine& m) {
    if (line_equiv(l, m))
        throw DomainError("degenerate-meet", "no unique point on coincident lines");
    const auto c = cross3(l.a, l.b, l.c, m.a, m.b, m.c);
    return canonicalize({c[0], c[1], c[2]});
}

CanvasElement vanishing_point(const Direction& d) {
    if (d.dx == 0.0 && d.dy == 0.0 && d.dz == 0.0)
        throw DomainError("zero-direction", "the zero vector has no direction");
    return canonicalize({d.dx, d.dy, d.dz});
}

CanvasLine horizon() { return {0.0, 0.0, 1.0}; }

bool line_equiv(const CanvasLine& l, const CanvasLine& m) {
    const auto c = cross3(l.a, l.b, l.c, m.a, m.b, m.c);
    const double scale = inf_norm3(l.a, l.b, l.c) * inf_norm3(m.a, m.b, m.c);
    return inf_norm3(c[0], c[1], c[2]) <= kRelTol * scale;
}

bool element_equiv(const CanvasElement& p, const CanvasElement& q) {
    return pixel_equiv(pixel_of(p), pixel_of(q));
}

double incidence_residual(const CanvasElement& e, const CanvasLine& l) {
    const double ln = inf_norm3(l.a, l.b, l.c);
    if (ln == 0.0) throw DomainError("invalid-line", "all three line coefficients are zero");
    const Pixel p = pixel_of(e);  // already canonical for either kind
    const double r = (l.a / ln) * p.h0 + (l.b / ln) * p.h1 + (l.c / ln) * p.h2;
    return std::fabs(r);
}

bool incident(const CanvasElement& e, const CanvasLine& l) {
    const Pixel p = pixel_of(e);
    const double scale = std::max(1.0, inf_norm3(p.h0, p.h1, p.h2));
    return incidence_residual(e, l) <= kRelTol * scale;
}

double collinearity_residual(const CanvasPoint& p, const CanvasPoint& q,
                             const CanvasPoint& r) {
    const double vx = q.u - p.u, vw = q.w - p.w;
    const double sx = r.u - p.u, sw = r.w - p.w;
    const double denom = std::hypot(vx, vw) * std::hypot(sx, sw);
    if (denom == 0.0) return 0.0;
    return std::fabs(vx * sw - vw * sx) / denom;
}

double element_distance(const CanvasElement& p, const CanvasElement& q) {
    if (is_proper(p) && is_proper(q)) {
        const auto& a = proper(p);
        const auto& b = proper(q);
        return std::hypot(a.u - b.u, a.w - b.w);
    }
    if (!is_proper(p) && !is_proper(q)) {
        const auto& a = improper(p);
        const auto& b = improper(q);
        if (a.x_axis && b.x_axis) return 0.0;
        if (a.x_axis || b.x_axis) return std::numeric_limits<double>::infinity();
        return std::fabs(a.u - b.u);
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace perspectiva
