#include "perspectiva/projector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "perspectiva/errors.hpp"

namespace perspectiva {

namespace {

// Agreement required between the two derivations of a vanishing point
// (from the direction, and from the meet of member images).
constexpr double kFamilyTol = 1e-9;

double inf3(double a, double b, double c) {
    return std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
}

Point3 add(const Point3& p, const Direction& d, double t) {
    return {p.x + t * d.dx, p.y + t * d.dy, p.z + t * d.dz};
}

Point3 lerp(const Point3& a, const Point3& b, double t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)};
}

bool parallel(const Point3& p, const Direction& d) {
    const double c0 = p.y * d.dz - p.z * d.dy;
    const double c1 = p.z * d.dx - p.x * d.dz;
    const double c2 = p.x * d.dy - p.y * d.dx;
    return inf3(c0, c1, c2) <= kRelTol * inf3(p.x, p.y, p.z) * inf3(d.dx, d.dy, d.dz);
}

CanvasPoint image_of(const Point3& n) {  // normalised point, n.y > 0
    return {n.x / n.y, n.z / n.y};
}

void require_frame(const ViewerFrame& f) {
    if (!(f.canvas_distance_D > 0.0) || !(f.eye_height_H > 0.0))
        throw DomainError("invalid-frame", "viewer height and distance must be positive");
}

// Exact image of the unbounded line through `anchor_n` (normalised frame)
// with direction d. A line running through the eye images to a single
// point and yields nothing.
std::optional<CanvasLine> image_line_of(const Point3& anchor_n, const Direction& d) {
    if (parallel(anchor_n, d)) return std::nullopt;
    // pick a second point about as far out as the anchor for conditioning
    const double span = std::max(1.0, inf3(anchor_n.x, anchor_n.y, anchor_n.z)) /
                        inf3(d.dx, d.dy, d.dz);
    const CanvasElement e1 = canonicalize(project_point(anchor_n));
    const CanvasElement e2 = canonicalize(project_point(add(anchor_n, d, span)));
    return join(e1, e2);
}

struct Member {
    Direction dir;
    Point3 anchor;  // physical
};

std::string format_violations(const std::vector<Violation>& vs) {
    std::ostringstream os;
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) os << "; ";
        os << vs[i].field << " " << vs[i].rule;
    }
    return os.str();
}

std::vector<double> floor_xs(const TiledFloor& f) {
    std::vector<double> xs;
    const double left = f.origin_offset - f.columns * f.tile_width_s_x / 2.0;
    for (int j = 0; j <= f.columns; ++j) xs.push_back(left + j * f.tile_width_s_x);
    return xs;
}

std::vector<double> floor_ys(const TiledFloor& f, double D) {
    std::vector<double> ys;
    for (int i = 0; i <= f.rows; ++i) ys.push_back(D + i * f.tile_depth_s_y);
    return ys;
}

class SceneProjector {
public:
    explicit SceneProjector(const Scene& scene) : scene_(scene), frame_(scene.frame) {}

    ProjectionReport run() {
        rep_.frame = frame_;
        rep_.braccio_cm = scene_.braccio_cm;
        rep_.horizon_line = horizon();
        diag_n_ = std::hypot(frame_.canvas_width, frame_.canvas_height) /
                  frame_.canvas_distance_D;
        base_w_n_ = (frame_.canvas_base_height - frame_.eye_height_H) /
                    frame_.canvas_distance_D;

        for (size_t i = 0; i < scene_.lines.size(); ++i) add_line(scene_.lines[i], i);
        for (size_t i = 0; i < scene_.floors.size(); ++i) add_floor(scene_.floors[i], i);
        for (size_t i = 0; i < scene_.figures.size(); ++i) add_figure(scene_.figures[i], i);

        rep_.vanishing_points = analyze_families(scene_, 12);
        fill_distance_point();
        return std::move(rep_);
    }

private:
    const Scene& scene_;
    const ViewerFrame& frame_;
    ProjectionReport rep_;
    double diag_n_ = 0.0;
    double base_w_n_ = 0.0;

    void add_projected(const Point3& a, const Point3& b, std::string id, Style style) {
        const Point3 na = normalize(frame_, a);
        const Point3 nb = normalize(frame_, b);
        const bool touched = na.y < kClipEpsilon || nb.y < kClipEpsilon;
        auto result = project_segment(frame_, a, b, std::move(id), style);
        if (const auto* seg = std::get_if<CanvasSegment>(&result)) {
            if (touched) ++rep_.clipped_count;
            if (seg->start.u == seg->end.u && seg->start.w == seg->end.w) {
                ++rep_.clipped_count;  // image collapsed to a point
                return;
            }
            rep_.segments.push_back(*seg);
        } else {
            ++rep_.clipped_count;
        }
    }

    void push_segment(CanvasPoint s, CanvasPoint e, std::string id, Style style) {
        if (s.u == e.u && s.w == e.w) {
            ++rep_.clipped_count;
            return;
        }
        rep_.segments.push_back({s, e, std::move(id), style});
    }

    void add_line(const SceneLine& l, size_t idx) {
        const std::string id = "line" + std::to_string(idx);
        const Point3 anchor_n = normalize(frame_, l.anchor);
        if (auto il = image_line_of(anchor_n, l.direction))
            rep_.image_lines.push_back({id, *il});

        if (l.extent) {
            add_projected(add(l.anchor, l.direction, l.extent->t0),
                          add(l.anchor, l.direction, l.extent->t1), id, Style::beam);
            return;
        }
        draw_unbounded(l, anchor_n, id);
    }

    // An unbounded line is drawn from where its image crosses the canvas
    // bottom edge (or, failing that, from its canvas-plane crossing) up to
    // its vanishing point, capped at ten canvas diagonals.
    void draw_unbounded(const SceneLine& l, const Point3& anchor_n, const std::string& id) {
        const auto il = image_line_of(anchor_n, l.direction);
        if (!il) {
            ++rep_.clipped_count;  // the line runs through the eye
            return;
        }
        const CanvasElement vp = vanishing_point(l.direction);
        if (is_proper(vp)) {
            const CanvasPoint V = proper(vp);
            CanvasPoint start;
            bool have = false;
            const CanvasLine base{0.0, -base_w_n_, 1.0};  // the edge w == base_w_n_
            if (!line_equiv(*il, base)) {
                const CanvasElement m = meet(*il, base);
                if (is_proper(m)) {
                    start = proper(m);
                    have = std::hypot(V.u - start.u, V.w - start.w) > 0.0;
                }
            }
            if (!have) {
                // crossing of the scene line with the canvas plane y == 1
                const double t = (1.0 - anchor_n.y) / l.direction.dy;
                const Point3 c = add(anchor_n, l.direction, t);
                start = {c.x, c.z};
            }
            const double dist = std::hypot(V.u - start.u, V.w - start.w);
            if (dist == 0.0) {
                ++rep_.clipped_count;
                return;
            }
            CanvasPoint end = V;
            const double cap = 10.0 * diag_n_;
            if (dist > cap)
                end = {start.u + (V.u - start.u) * cap / dist,
                       start.w + (V.w - start.w) * cap / dist};
            push_segment(start, end, id, Style::beam);
        } else {
            // parallel to the canvas: the image is a full straight line,
            // drawn as a window around the anchor's image
            if (anchor_n.y < kClipEpsilon) {
                ++rep_.clipped_count;
                return;
            }
            const CanvasPoint a = image_of(anchor_n);
            const double len = std::hypot(l.direction.dx, l.direction.dz);
            const double ux = l.direction.dx / len, uw = l.direction.dz / len;
            const double r = 5.0 * diag_n_;
            push_segment({a.u - ux * r, a.w - uw * r}, {a.u + ux * r, a.w + uw * r}, id,
                         Style::beam);
        }
    }

    void add_floor(const TiledFloor& f, size_t idx) {
        const std::string fid = "floor" + std::to_string(idx);
        const auto xs = floor_xs(f);
        const auto ys = floor_ys(f, frame_.canvas_distance_D);
        for (size_t j = 0; j < xs.size(); ++j)
            add_projected({xs[j], ys.front(), 0.0}, {xs[j], ys.back(), 0.0},
                          fid + "/ortho" + std::to_string(j), Style::tile_edge);
        for (size_t i = 0; i < ys.size(); ++i)
            add_projected({xs.front(), ys[i], 0.0}, {xs.back(), ys[i], 0.0},
                          fid + "/trans" + std::to_string(i), Style::tile_edge);
        add_projected({xs[0], ys[0], 0.0}, {xs[1], ys[1], 0.0}, fid + "/diag",
                      Style::diagonal);
        for (size_t i = 0; i < ys.size(); ++i)
            for (size_t j = 0; j < xs.size(); ++j) {
                const Point3 n = normalize(frame_, {xs[j], ys[i], 0.0});
                rep_.tile_corners.push_back(image_of(n));
            }
    }

    void add_figure(const StandingFigure& g, size_t idx) {
        add_projected({g.base_x, g.base_depth, 0.0}, {g.base_x, g.base_depth, g.height},
                      "figure" + std::to_string(idx) + "/" + g.label, Style::figure);
    }

    void fill_distance_point() {
        if (scene_.floors.empty()) {
            rep_.distance_point_status = DistancePointStatus::no_floor;
            return;
        }
        const TiledFloor& f = scene_.floors.front();
        if (!f.square()) {
            rep_.distance_point_status = DistancePointStatus::tiles_not_square;
            return;
        }
        const auto xs = floor_xs(f);
        const Direction diag{f.tile_width_s_x, f.tile_depth_s_y, 0.0};
        const Point3 anchor_n =
            normalize(frame_, {xs[0], frame_.canvas_distance_D, 0.0});
        const auto il = image_line_of(anchor_n, diag);
        if (!il) return;
        const CanvasElement a = meet(*il, horizon());
        if (!is_proper(a)) return;
        const CanvasPoint A = proper(a);
        rep_.distance_point = DistancePoint{
            A, std::fabs(A.u) * frame_.canvas_distance_D};
        rep_.distance_point_status = DistancePointStatus::present;
    }
};

}  // namespace

const char* style_name(Style s) {
    switch (s) {
        case Style::beam: return "beam";
        case Style::tile_edge: return "tile_edge";
        case Style::diagonal: return "diagonal";
        case Style::figure: return "figure";
        case Style::overlay: return "overlay";
    }
    return "beam";
}

std::variant<CanvasSegment, Rejection> project_segment(const ViewerFrame& frame,
                                                       const Point3& a, const Point3& b,
                                                       std::string source_id, Style style) {
    require_frame(frame);
    if (a.x == b.x && a.y == b.y && a.z == b.z)
        throw DomainError("invalid-segment", "segment endpoints coincide");
    Point3 na = normalize(frame, a);
    Point3 nb = normalize(frame, b);
    if (na.y < kClipEpsilon && nb.y < kClipEpsilon) return Rejection{"behind viewer"};
    const double c0 = na.y * nb.z - na.z * nb.y;
    const double c1 = na.z * nb.x - na.x * nb.z;
    const double c2 = na.x * nb.y - na.y * nb.x;
    if (inf3(c0, c1, c2) <=
        kRelTol * inf3(na.x, na.y, na.z) * inf3(nb.x, nb.y, nb.z))
        return Rejection{"degenerate ray"};
    if (na.y < kClipEpsilon) {
        na = lerp(na, nb, (kClipEpsilon - na.y) / (nb.y - na.y));
        na.y = kClipEpsilon;
    } else if (nb.y < kClipEpsilon) {
        nb = lerp(nb, na, (kClipEpsilon - nb.y) / (na.y - nb.y));
        nb.y = kClipEpsilon;
    }
    return CanvasSegment{image_of(na), image_of(nb), std::move(source_id), style};
}

ProjectionReport project_scene(const Scene& scene) {
    const auto violations = validate(scene);
    if (!violations.empty())
        throw DomainError("invalid-scene", format_violations(violations));
    return SceneProjector(scene).run();
}

DistancePoint distance_point(const ProjectionReport& report) {
    if (report.distance_point) return *report.distance_point;
    if (report.distance_point_status == DistancePointStatus::tiles_not_square)
        throw DomainError("not-applicable", "diagonal not 45 degrees: tiles are not square");
    throw DomainError("not-applicable", "scene has no tiled floor");
}

std::string direction_class_key(const Direction& d, int digits) {
    if (d.dx == 0.0 && d.dy == 0.0 && d.dz == 0.0)
        throw DomainError("zero-direction", "the zero vector has no direction");
    digits = std::clamp(digits, 0, 17);
    double c[3] = {d.dx, d.dy, d.dz};
    double pivot = 0.0;
    for (double v : c)
        if (v != 0.0) {
            pivot = v;
            break;
        }
    std::string key;
    for (int k = 0; k < 3; ++k) {
        char buf[512];
        std::snprintf(buf, sizeof buf, "%.*f", digits, c[k] / pivot);
        std::string s = buf;
        if (s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos)
            s.erase(0, 1);  // -0.000 and 0.000 name the same class
        if (k) key += ",";
        key += s;
    }
    return key;
}

std::map<std::string, FamilyEntry> analyze_families(const Scene& scene, int merge_digits) {
    const auto violations = validate(scene);
    if (!violations.empty())
        throw DomainError("invalid-scene", format_violations(violations));

    std::vector<Member> members;
    for (const SceneLine& l : scene.lines) members.push_back({l.direction, l.anchor});
    for (const TiledFloor& f : scene.floors) {
        const auto xs = floor_xs(f);
        const auto ys = floor_ys(f, scene.frame.canvas_distance_D);
        for (double x : xs) members.push_back({{0.0, 1.0, 0.0}, {x, ys.front(), 0.0}});
        for (double y : ys) members.push_back({{1.0, 0.0, 0.0}, {xs.front(), y, 0.0}});
        members.push_back(
            {{f.tile_width_s_x, f.tile_depth_s_y, 0.0}, {xs.front(), ys.front(), 0.0}});
    }

    std::map<std::string, FamilyEntry> table;
    std::map<std::string, std::vector<std::optional<CanvasLine>>> images;
    for (const Member& m : members) {
        const std::string key = direction_class_key(m.dir, merge_digits);
        auto [it, fresh] = table.try_emplace(key);
        FamilyEntry& fam = it->second;
        if (fresh) {
            fam.direction = m.dir;
            fam.point = vanishing_point(m.dir);
        }
        ++fam.members;
        images[key].push_back(image_line_of(normalize(scene.frame, m.anchor), m.dir));
    }

    for (auto& [key, fam] : table) {
        const auto& ims = images[key];
        std::optional<double> worst;
        for (size_t i = 0; i < ims.size(); ++i) {
            if (!ims[i]) continue;
            for (size_t j = i + 1; j < ims.size(); ++j) {
                if (!ims[j]) continue;
                if (line_equiv(*ims[i], *ims[j])) continue;
                const CanvasElement m = meet(*ims[i], *ims[j]);
                const double dev = element_distance(m, fam.point);
                if (!worst || dev > *worst) worst = dev;
            }
        }
        fam.meet_deviation = worst;
        fam.consistent = !worst || *worst <= kFamilyTol;
    }
    return table;
}

}  // namespace perspectiva
