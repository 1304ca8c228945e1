#include "perspectiva/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "perspectiva/errors.hpp"

namespace perspectiva {

namespace {

std::string px(double v) {
    if (!std::isfinite(v))
        throw DomainError("svg-internal", "non-finite coordinate reached the writer");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Everything below works in canvas centimetres measured from the
// bottom-left corner of the picture; the writer maps to pixels last.
struct CmSegment {
    double u1, w1, u2, w2;
    Style style;
    std::string source;
};

struct CmMarker {
    double u, w;
    std::string label;
};

struct Sheet {
    double width_cm = 0.0;
    double height_cm = 0.0;
    double horizon_cm = 0.0;  // above the bottom edge
    std::vector<CmSegment> segments;
    std::vector<CmMarker> markers;
    std::vector<std::string> notes;  // legend lines, e.g. improper points
};

// Liang-Barsky clip of a segment to the rectangle [0,w] x [0,h].
bool clip_rect(double& x1, double& y1, double& x2, double& y2, double w, double h) {
    double t0 = 0.0, t1 = 1.0;
    const double dx = x2 - x1, dy = y2 - y1;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {x1 - 0.0, w - x1, y1 - 0.0, h - y1};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return false;
            continue;
        }
        const double r = q[i] / p[i];
        if (p[i] < 0.0) {
            if (r > t1) return false;
            if (r > t0) t0 = r;
        } else {
            if (r < t0) return false;
            if (r < t1) t1 = r;
        }
    }
    const double nx1 = x1 + t0 * dx, ny1 = y1 + t0 * dy;
    const double nx2 = x1 + t1 * dx, ny2 = y1 + t1 * dy;
    x1 = nx1; y1 = ny1; x2 = nx2; y2 = ny2;
    return true;
}

std::string write_sheet(const Sheet& sheet, const RenderOptions& opt) {
    if (opt.viewport_w <= 0 || opt.viewport_h <= 0 ||
        2.0 * opt.margin >= std::min(opt.viewport_w, opt.viewport_h))
        throw DomainError("invalid-viewport", "viewport leaves no drawing area");
    if (!(sheet.width_cm > 0.0) || !(sheet.height_cm > 0.0))
        throw DomainError("invalid-viewport", "canvas has no area");

    const double vw = opt.viewport_w, vh = opt.viewport_h;
    const double scale = std::min((vw - 2.0 * opt.margin) / sheet.width_cm,
                                  (vh - 2.0 * opt.margin) / sheet.height_cm);
    const double ox = (vw - sheet.width_cm * scale) / 2.0;
    const double oy = (vh - sheet.height_cm * scale) / 2.0;
    const auto X = [&](double u) { return ox + u * scale; };
    const auto Y = [&](double w) { return vh - (oy + w * scale); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.viewport_w
       << "\" height=\"" << opt.viewport_h << "\" viewBox=\"0 0 " << opt.viewport_w << " "
       << opt.viewport_h << "\">\n";
    os << "<rect x=\"" << px(X(0.0)) << "\" y=\"" << px(Y(sheet.height_cm)) << "\" width=\""
       << px(sheet.width_cm * scale) << "\" height=\"" << px(sheet.height_cm * scale)
       << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

    for (const CmSegment& s : sheet.segments) {
        double x1 = X(s.u1), y1 = Y(s.w1), x2 = X(s.u2), y2 = Y(s.w2);
        if (!clip_rect(x1, y1, x2, y2, vw, vh)) continue;
        if (x1 == x2 && y1 == y2) continue;
        const Stroke& stroke = opt.style_map.count(s.style)
                                   ? opt.style_map.at(s.style)
                                   : Stroke{};
        os << "<line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2)
           << "\" y2=\"" << px(y2) << "\" class=\"" << style_name(s.style)
           << "\" data-source=\"" << s.source << "\" stroke=\"" << stroke.color
           << "\" stroke-width=\"" << px(stroke.width) << "\"";
        if (!stroke.dash.empty()) os << " stroke-dasharray=\"" << stroke.dash << "\"";
        os << "/>\n";
    }

    if (opt.show_horizon) {
        double x1 = X(0.0), y1 = Y(sheet.horizon_cm);
        double x2 = X(sheet.width_cm), y2 = y1;
        if (clip_rect(x1, y1, x2, y2, vw, vh))
            os << "<line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2)
               << "\" y2=\"" << px(y2)
               << "\" class=\"horizon\" stroke=\"#888888\" stroke-width=\"1\""
               << " stroke-dasharray=\"6,4\"/>\n";
    }

    if (opt.show_vanishing_points) {
        for (const CmMarker& m : sheet.markers) {
            const double cx = X(m.u), cy = Y(m.w);
            if (cx < 0.0 || cx > vw || cy < 0.0 || cy > vh) continue;
            os << "<circle cx=\"" << px(cx) << "\" cy=\"" << px(cy)
               << "\" r=\"4\" fill=\"#b23232\"/>\n";
            os << "<text x=\"" << px(cx + 6.0) << "\" y=\"" << px(cy - 6.0)
               << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#b23232\">" << m.label
               << "</text>\n";
        }
    }

    if (opt.show_improper_labels) {
        double y = 16.0;
        for (const std::string& note : sheet.notes) {
            os << "<text x=\"8.000\" y=\"" << px(y)
               << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#666666\">" << note
               << "</text>\n";
            y += 14.0;
        }
    }

    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::map<Style, Stroke> default_style_map() {
    return {
        {Style::beam, {"#1f6fb2", 1.2, ""}},
        {Style::tile_edge, {"#444444", 1.0, ""}},
        {Style::diagonal, {"#c22f2f", 1.2, ""}},
        {Style::figure, {"#2a7d2a", 2.0, ""}},
        {Style::overlay, {"#888888", 1.0, ""}},
    };
}

std::string emit_svg(const ProjectionReport& report, const RenderOptions& options) {
    const ViewerFrame& f = report.frame;
    Sheet sheet;
    sheet.width_cm = f.canvas_width;
    sheet.height_cm = f.canvas_height;
    sheet.horizon_cm = f.eye_height_H - f.canvas_base_height;

    const double D = f.canvas_distance_D;
    const double u0 = f.canvas_width / 2.0;        // midline from the left edge
    const double w0 = sheet.horizon_cm;            // eye level above the bottom edge
    const auto to_cm_u = [&](double u) { return u * D + u0; };
    const auto to_cm_w = [&](double w) { return w * D + w0; };

    for (const CanvasSegment& s : report.segments)
        sheet.segments.push_back({to_cm_u(s.start.u), to_cm_w(s.start.w), to_cm_u(s.end.u),
                                  to_cm_w(s.end.w), s.style, s.source_id});

    int next_u = 1;
    for (const auto& [key, fam] : report.vanishing_points) {
        if (!is_proper(fam.point)) {
            const auto& ip = improper(fam.point);
            std::ostringstream note;
            note << "improper " << key << " ";
            if (ip.x_axis)
                note << "(horizontal)";
            else
                note << "(u slope " << ip.u << ")";
            sheet.notes.push_back(note.str());
            continue;
        }
        const CanvasPoint& p = proper(fam.point);
        std::string label;
        if (std::fabs(p.u) <= 1e-9 && std::fabs(p.w) <= 1e-9)
            label = "V";
        else if (report.distance_point &&
                 element_distance(fam.point, CanvasElement{report.distance_point->point}) <=
                     1e-9)
            label = "W";
        else
            label = "U" + std::to_string(next_u++);
        sheet.markers.push_back({to_cm_u(p.u), to_cm_w(p.w), label});
    }

    return write_sheet(sheet, options);
}

std::string emit_svg(const AlbertiGrid& grid, const RenderOptions& options) {
    Sheet sheet;
    sheet.width_cm = grid.input.canvas_side;
    sheet.height_cm = grid.input.canvas_side;
    sheet.horizon_cm = grid.input.vp_height;

    const double u0 = grid.input.canvas_side / 2.0;
    for (const CanvasSegment& s : grid.all_segments())
        sheet.segments.push_back(
            {s.start.u + u0, s.start.w, s.end.u + u0, s.end.w, s.style, s.source_id});

    sheet.markers.push_back({grid.vp.u + u0, grid.vp.w, "V"});
    sheet.markers.push_back({grid.distance_point_A.u + u0, grid.distance_point_A.w, "A"});

    return write_sheet(sheet, options);
}

}  // namespace perspectiva
