#include "perspectiva/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "perspectiva/errors.hpp"

namespace perspectiva {

namespace {

using nlohmann::json;

// 12 significant digits is plenty for the 1e-9 guarantees downstream and
// keeps the text stable across writers.
double round_sig(double v) {
    if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return std::strtod(buf, nullptr);
}

json num(double v) { return round_sig(v); }

json uw(const CanvasPoint& p) { return json::array({num(p.u), num(p.w)}); }

json element_json(const CanvasElement& e) {
    json j;
    if (is_proper(e)) {
        j["uw"] = uw(proper(e));
    } else {
        const auto& ip = improper(e);
        if (ip.x_axis)
            j["improper_axis"] = true;
        else
            j["improper_u"] = num(ip.u);
    }
    return j;
}

json segment_json(const CanvasSegment& s) {
    json j;
    j["start"] = uw(s.start);
    j["end"] = uw(s.end);
    j["source"] = s.source_id;
    j["style"] = style_name(s.style);
    return j;
}

json frame_json(const ViewerFrame& f) {
    json j;
    j["eye_height_cm"] = num(f.eye_height_H);
    j["canvas_distance_cm"] = num(f.canvas_distance_D);
    j["canvas_width_cm"] = num(f.canvas_width);
    j["canvas_height_cm"] = num(f.canvas_height);
    j["canvas_base_height_cm"] = num(f.canvas_base_height);
    return j;
}

json families_json(const std::map<std::string, FamilyEntry>& families) {
    json j = json::object();
    for (const auto& [key, fam] : families) {
        json f;
        f["direction"] =
            json::array({num(fam.direction.dx), num(fam.direction.dy), num(fam.direction.dz)});
        f["members"] = fam.members;
        f["point"] = element_json(fam.point);
        f["meet_deviation"] = fam.meet_deviation ? json(num(*fam.meet_deviation)) : json();
        f["consistent"] = fam.consistent;
        j[key] = std::move(f);
    }
    return j;
}

const char* status_name(DistancePointStatus s) {
    switch (s) {
        case DistancePointStatus::present: return "present";
        case DistancePointStatus::no_floor: return "no_floor";
        case DistancePointStatus::tiles_not_square: return "tiles_not_square";
    }
    return "no_floor";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

[[noreturn]] void bad_annotation(const std::string& why) {
    throw DomainError("invalid-annotation", why);
}

double req_num(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        bad_annotation(std::string("missing or non-numeric field '") + key + "'");
    return j.at(key).get<double>();
}

CanvasPoint req_point(const json& j, const char* key) {
    if (!j.contains(key)) bad_annotation(std::string("missing field '") + key + "'");
    const json& p = j.at(key);
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        bad_annotation(std::string("field '") + key + "' must be a [u, w] pair");
    return {p[0].get<double>(), p[1].get<double>()};
}

}  // namespace

std::string report_to_json(const ProjectionReport& r) {
    json j;
    j["schema"] = 1;
    j["kind"] = "projection";
    j["coordinate_unit"] = "eye_canvas_distance";
    j["frame"] = frame_json(r.frame);
    j["braccio_cm"] = num(r.braccio_cm);
    j["segments"] = json::array();
    for (const CanvasSegment& s : r.segments) j["segments"].push_back(segment_json(s));
    j["image_lines"] = json::array();
    for (const ImageLine& il : r.image_lines) {
        json l;
        l["source"] = il.source_id;
        l["coeffs"] = json::array({num(il.line.a), num(il.line.b), num(il.line.c)});
        j["image_lines"].push_back(std::move(l));
    }
    j["vanishing_points"] = families_json(r.vanishing_points);
    j["horizon"] =
        json::array({num(r.horizon_line.a), num(r.horizon_line.b), num(r.horizon_line.c)});
    if (r.distance_point) {
        json dp;
        dp["point"] = uw(r.distance_point->point);
        dp["eye_distance_cm"] = num(r.distance_point->eye_distance_cm);
        j["distance_point"] = std::move(dp);
    } else {
        j["distance_point"] = nullptr;
    }
    j["distance_point_status"] = status_name(r.distance_point_status);
    j["tile_corners"] = json::array();
    for (const CanvasPoint& c : r.tile_corners) j["tile_corners"].push_back(uw(c));
    j["clipped_count"] = r.clipped_count;
    return dump(j);
}

std::string grid_to_json(const AlbertiGrid& g) {
    const AlbertiInput& in = g.input;
    const double D = in.viewer_distance_D;
    const auto to_n = [&](const CanvasPoint& p) {
        return CanvasPoint{p.u / D, (p.w - in.vp_height) / D};
    };

    json j;
    j["schema"] = 1;
    j["kind"] = "alberti";
    j["coordinate_unit"] = "eye_canvas_distance";
    ViewerFrame f;
    f.eye_height_H = in.vp_height;
    f.canvas_distance_D = D;
    f.canvas_width = in.canvas_side;
    f.canvas_height = in.canvas_side;
    f.canvas_base_height = 0.0;
    j["frame"] = frame_json(f);
    j["tile_side_cm"] = num(in.tile_side_s);
    j["tile_count"] = in.tile_count;

    j["segments"] = json::array();
    for (const CanvasSegment& s : g.all_segments()) {
        CanvasSegment n = s;
        n.start = to_n(s.start);
        n.end = to_n(s.end);
        j["segments"].push_back(segment_json(n));
    }
    j["transversal_heights_cm"] = json::array();
    for (double h : g.transversal_heights) j["transversal_heights_cm"].push_back(num(h));

    std::map<std::string, FamilyEntry> families;
    {
        FamilyEntry ortho;
        ortho.direction = {0.0, 1.0, 0.0};
        ortho.point = vanishing_point(ortho.direction);
        ortho.members = static_cast<int>(g.orthogonal_images.size());
        families[direction_class_key(ortho.direction)] = ortho;
        FamilyEntry trans;
        trans.direction = {1.0, 0.0, 0.0};
        trans.point = vanishing_point(trans.direction);
        trans.members = static_cast<int>(g.transversal_segments.size());
        families[direction_class_key(trans.direction)] = trans;
        if (!g.diagonals.empty()) {
            FamilyEntry diag;
            diag.direction = {1.0, 1.0, 0.0};
            diag.point = vanishing_point(diag.direction);
            diag.members = static_cast<int>(g.diagonals.size());
            families[direction_class_key(diag.direction)] = diag;
        }
    }
    j["vanishing_points"] = families_json(families);
    j["horizon"] = json::array({0.0, 0.0, 1.0});

    json dp;
    dp["point"] = uw(to_n(g.distance_point_A));
    dp["eye_distance_cm"] = num(std::fabs(g.distance_point_A.u));
    j["distance_point"] = std::move(dp);
    j["distance_point_status"] = "present";

    j["tile_corners"] = json::array();
    for (const CanvasPoint& c : g.corners) j["tile_corners"].push_back(uw(to_n(c)));

    if (!g.diagonals.empty())
        j["diagonal_distance_check_cm"] =
            num(distance_from_diagonal(g.all_segments(), in.vp_height));
    j["clipped_count"] = 0;
    return dump(j);
}

std::string estimate_to_json(const ViewerEstimate& e) {
    json j;
    j["schema"] = 1;
    j["kind"] = "estimate";
    j["H_cm"] = num(e.H);
    j["D_cm"] = num(e.D);
    j["method_H"] = method_name(e.method_H);
    j["method_D"] = method_name(e.method_D);
    j["knee_residuals_cm"] = json::array();
    for (double r : e.knee_residuals) j["knee_residuals_cm"].push_back(num(r));
    j["distance_residuals_cm"] = json::array();
    for (double r : e.distance_residuals) j["distance_residuals_cm"].push_back(num(r));
    j["figures"] = json::array();
    for (const FigurePlacement& f : e.figures) {
        json g;
        g["label"] = f.label;
        g["x_cm"] = num(f.x);
        g["depth_cm"] = num(f.depth);
        g["real_height_cm"] = num(f.real_height);
        j["figures"].push_back(std::move(g));
    }
    return dump(j);
}

std::string annotation_to_json(const Annotation& a) {
    json j;
    j["schema"] = 1;
    j["canvas_width"] = num(a.canvas_width);
    j["canvas_height"] = num(a.canvas_height);
    j["base_height"] = num(a.base_height);
    if (a.horizon_height) j["horizon_height"] = num(*a.horizon_height);
    if (a.vp) j["vp"] = uw(*a.vp);
    j["figure_marks"] = json::array();
    for (const FigureMark& m : a.figure_marks) {
        json f;
        f["label"] = m.label;
        f["base"] = uw(m.base);
        f["top"] = uw(m.top);
        if (m.knee) f["knee"] = uw(*m.knee);
        if (m.assumed_real_height) f["assumed_real_height"] = num(*m.assumed_real_height);
        j["figure_marks"].push_back(std::move(f));
    }
    j["diagonal_marks"] = json::array();
    for (const DiagonalMark& m : a.diagonal_marks) {
        json d;
        d["p1"] = uw(m.p1);
        d["p2"] = uw(m.p2);
        d["assume_square_tile"] = m.assume_square_tile;
        j["diagonal_marks"].push_back(std::move(d));
    }
    return dump(j);
}

Annotation annotation_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        bad_annotation(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) bad_annotation("top level must be an object");
    if (!j.contains("schema") || j.at("schema") != 1)
        bad_annotation("missing or unsupported schema (expected 1)");

    Annotation a;
    a.canvas_width = req_num(j, "canvas_width");
    a.canvas_height = req_num(j, "canvas_height");
    if (j.contains("base_height")) a.base_height = req_num(j, "base_height");
    if (j.contains("horizon_height") && !j.at("horizon_height").is_null())
        a.horizon_height = req_num(j, "horizon_height");
    if (j.contains("vp") && !j.at("vp").is_null()) a.vp = req_point(j, "vp");

    if (j.contains("figure_marks")) {
        if (!j.at("figure_marks").is_array()) bad_annotation("figure_marks must be an array");
        for (const json& f : j.at("figure_marks")) {
            FigureMark m;
            if (f.contains("label")) {
                if (!f.at("label").is_string()) bad_annotation("figure label must be a string");
                m.label = f.at("label").get<std::string>();
            }
            m.base = req_point(f, "base");
            m.top = req_point(f, "top");
            if (f.contains("knee") && !f.at("knee").is_null()) m.knee = req_point(f, "knee");
            if (f.contains("assumed_real_height") && !f.at("assumed_real_height").is_null())
                m.assumed_real_height = req_num(f, "assumed_real_height");
            a.figure_marks.push_back(std::move(m));
        }
    }
    if (j.contains("diagonal_marks")) {
        if (!j.at("diagonal_marks").is_array())
            bad_annotation("diagonal_marks must be an array");
        for (const json& d : j.at("diagonal_marks")) {
            DiagonalMark m;
            m.p1 = req_point(d, "p1");
            m.p2 = req_point(d, "p2");
            if (d.contains("assume_square_tile")) {
                if (!d.at("assume_square_tile").is_boolean())
                    bad_annotation("assume_square_tile must be a boolean");
                m.assume_square_tile = d.at("assume_square_tile").get<bool>();
            }
            a.diagonal_marks.push_back(m);
        }
    }
    return a;
}

std::string families_to_json(const std::map<std::string, FamilyEntry>& families) {
    json j;
    j["schema"] = 1;
    j["kind"] = "vanishing";
    j["families"] = families_json(families);
    bool all = true;
    for (const auto& [key, fam] : families) all = all && fam.consistent;
    j["consistent"] = all;
    return dump(j);
}

}  // namespace perspectiva
