#include "perspectiva/reconstruct.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "perspectiva/errors.hpp"

namespace perspectiva {

namespace {

bool inside(const CanvasPoint& p, const Annotation& a) {
    return p.u >= 0.0 && p.u <= a.canvas_width && p.w >= 0.0 && p.w <= a.canvas_height;
}

double mean(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

const char* method_name(MethodH m) {
    return m == MethodH::horizon_mark ? "horizon_mark" : "knee_rule";
}

const char* method_name(MethodD) { return "distance_point"; }

std::vector<Violation> validate(const Annotation& a) {
    std::vector<Violation> out;
    const auto bad = [&out](std::string field, std::string rule) {
        out.push_back({std::move(field), std::move(rule)});
    };
    if (!(a.canvas_width > 0.0)) bad("canvas_width", "must be positive");
    if (!(a.canvas_height > 0.0)) bad("canvas_height", "must be positive");
    if (a.base_height < 0.0) bad("base_height", "must not be negative");
    if (a.horizon_height && !(*a.horizon_height > 0.0))
        bad("horizon_height", "must be positive");
    if (a.vp && !inside(*a.vp, a)) bad("vp", "must lie inside the canvas");
    for (size_t i = 0; i < a.figure_marks.size(); ++i) {
        const FigureMark& m = a.figure_marks[i];
        const std::string at = "figure_marks[" + std::to_string(i) + "]";
        if (!inside(m.base, a)) bad(at + ".base", "must lie inside the canvas");
        if (!inside(m.top, a)) bad(at + ".top", "must lie inside the canvas");
        if (m.knee && !inside(*m.knee, a)) bad(at + ".knee", "must lie inside the canvas");
        if (!(m.top.w > m.base.w)) bad(at + ".top", "must sit above the base mark");
        if (m.assumed_real_height && !(*m.assumed_real_height > 0.0))
            bad(at + ".assumed_real_height", "must be positive");
    }
    for (size_t i = 0; i < a.diagonal_marks.size(); ++i) {
        const DiagonalMark& m = a.diagonal_marks[i];
        const std::string at = "diagonal_marks[" + std::to_string(i) + "]";
        if (!inside(m.p1, a)) bad(at + ".p1", "must lie inside the canvas");
        if (!inside(m.p2, a)) bad(at + ".p2", "must lie inside the canvas");
        if (m.p1.u == m.p2.u && m.p1.w == m.p2.w) bad(at, "needs two distinct points");
    }
    return out;
}

HEstimate estimate_H(const Annotation& a, const ReconstructOptions& opt) {
    if (a.horizon_height) {
        HEstimate e;
        e.horizon_above_base = *a.horizon_height;
        e.H = e.horizon_above_base + a.base_height;
        e.method = MethodH::horizon_mark;
        return e;
    }

    std::vector<double> knee_ws;
    std::vector<double> heights;
    std::vector<std::string> labels;
    for (const FigureMark& m : a.figure_marks) {
        if (!m.knee || !m.assumed_real_height) continue;
        knee_ws.push_back(m.knee->w);
        heights.push_back(*m.assumed_real_height);
        labels.push_back(m.label);
    }
    if (knee_ws.empty())
        throw DomainError("insufficient-annotation",
                          "no horizon mark and no figure with knee mark plus assumed height");

    const double knee_mean = mean(knee_ws);
    const double tol = opt.knee_tolerance_frac * a.canvas_height;
    std::ostringstream offenders;
    bool inconsistent = false;
    for (size_t i = 0; i < knee_ws.size(); ++i) {
        if (std::fabs(knee_ws[i] - knee_mean) > tol) {
            if (inconsistent) offenders << ", ";
            offenders << labels[i] << " (knee at " << knee_ws[i] << ")";
            inconsistent = true;
        }
    }
    if (inconsistent)
        throw DomainError("inconsistent-annotation",
                          "knee marks disagree on the horizon: " + offenders.str());

    HEstimate e;
    e.method = MethodH::knee_rule;
    e.horizon_above_base = knee_mean;
    std::vector<double> hs;
    for (double h : heights) hs.push_back(opt.knee_ratio * h);
    e.H = mean(hs);
    for (double w : knee_ws) e.knee_residuals.push_back(w - knee_mean);
    return e;
}

DEstimate estimate_D(const Annotation& a, const HEstimate& h, const ReconstructOptions&) {
    if (!a.vp)
        throw DomainError("insufficient-annotation",
                          "distance estimation needs the vanishing point mark");
    if (a.diagonal_marks.empty())
        throw DomainError("insufficient-annotation", "no diagonal marks");

    std::vector<double> ds;
    for (const DiagonalMark& m : a.diagonal_marks) {
        if (!m.assume_square_tile) continue;
        const double dw = m.p2.w - m.p1.w;
        const double scale = std::max({1.0, std::fabs(m.p1.w), std::fabs(m.p2.w),
                                       std::fabs(m.p1.u), std::fabs(m.p2.u)});
        if (std::fabs(dw) <= kRelTol * scale)
            throw DomainError("no-meet", "diagonal mark is parallel to the horizon");
        const double t = (h.horizon_above_base - m.p1.w) / dw;
        const double u = m.p1.u + t * (m.p2.u - m.p1.u);
        ds.push_back(std::fabs(u - a.vp->u));
    }
    if (ds.empty())
        throw DomainError("not-determinable",
                          "no diagonal mark is declared to span a square tile");

    DEstimate e;
    e.D = mean(ds);
    for (double d : ds) e.residuals.push_back(d - e.D);
    return e;
}

FigurePlacement locate_figure(const Annotation& a, double H, double D,
                              const FigureMark& mark) {
    if (!a.vp)
        throw DomainError("insufficient-annotation",
                          "figure placement needs the vanishing point mark");
    const double horizon_above_base = H - a.base_height;
    const double t = mark.base.w;
    if (t >= horizon_above_base)
        throw DomainError("base-at-or-above-horizon",
                          "figure base mark does not stand on the visible floor");

    FigurePlacement p;
    p.label = mark.label;
    p.depth = D * H / (horizon_above_base - t);
    p.x = (mark.base.u - a.vp->u) * p.depth / D;
    p.real_height = H + (mark.top.w - horizon_above_base) * p.depth / D;
    return p;
}

ViewerEstimate reconstruct_scene(const Annotation& a, const ReconstructOptions& opt) {
    const auto violations = validate(a);
    if (!violations.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < violations.size(); ++i) {
            if (i) os << "; ";
            os << violations[i].field << " " << violations[i].rule;
        }
        throw DomainError("invalid-annotation", os.str());
    }

    const HEstimate h = estimate_H(a, opt);
    const DEstimate d = estimate_D(a, h, opt);

    ViewerEstimate e;
    e.H = h.H;
    e.D = d.D;
    e.method_H = h.method;
    e.method_D = d.method;
    e.knee_residuals = h.knee_residuals;
    e.distance_residuals = d.residuals;
    for (const FigureMark& m : a.figure_marks)
        e.figures.push_back(locate_figure(a, e.H, e.D, m));
    return e;
}

}  // namespace perspectiva
