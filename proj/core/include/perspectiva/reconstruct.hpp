#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perspectiva/scene.hpp"

// Recovering the painter's viewpoint from measurements on the picture.
//
// Annotations live in physical canvas centimetres, measured from the
// bottom-left corner of the picture. The estimates invert the standing
// viewer model: eye height H above the floor, eye-canvas distance D.

namespace perspectiva {

// Knee height as a fraction of standing height. With the conventional
// three-braccia figure (174 cm) this puts the knee at 60 cm.
inline constexpr double kDefaultKneeRatio = 60.0 / 174.0;

struct FigureMark {
    std::string label;
    CanvasPoint base;  // where the figure meets the floor
    CanvasPoint top;
    std::optional<CanvasPoint> knee;
    std::optional<double> assumed_real_height;  // cm
};

struct DiagonalMark {
    CanvasPoint p1;
    CanvasPoint p2;
    bool assume_square_tile = true;
};

struct Annotation {
    double canvas_width = 0.0;   // cm
    double canvas_height = 0.0;  // cm
    double base_height = 0.0;    // canvas bottom edge above the floor, cm
    std::optional<double> horizon_height;  // cm above the bottom edge
    std::optional<CanvasPoint> vp;         // principal vanishing point
    std::vector<FigureMark> figure_marks;
    std::vector<DiagonalMark> diagonal_marks;
};

std::vector<Violation> validate(const Annotation& annotation);

enum class MethodH { horizon_mark, knee_rule };
enum class MethodD { distance_point };

const char* method_name(MethodH m);
const char* method_name(MethodD m);

struct ReconstructOptions {
    double knee_ratio = kDefaultKneeRatio;
    // Knee marks may scatter this fraction of the canvas height around
    // their mean before the annotation counts as inconsistent.
    double knee_tolerance_frac = 0.02;
};

struct HEstimate {
    double H = 0.0;                    // eye height above the floor, cm
    double horizon_above_base = 0.0;   // horizon height on the canvas, cm
    MethodH method = MethodH::horizon_mark;
    std::vector<double> knee_residuals;  // knee heights minus their mean
};

// Prefers an explicit horizon mark; otherwise applies the knee rule to
// figures carrying both a knee mark and an assumed real height (knees of
// a standing crowd graze the horizon, so H = knee_ratio * real height).
HEstimate estimate_H(const Annotation& annotation, const ReconstructOptions& options = {});

struct DEstimate {
    double D = 0.0;  // cm
    MethodD method = MethodD::distance_point;
    std::vector<double> residuals;  // per-diagonal distance minus the mean
};

// Extends each square-tile diagonal to the horizon and averages the
// horizontal gaps to the vanishing point.
DEstimate estimate_D(const Annotation& annotation, const HEstimate& h,
                     const ReconstructOptions& options = {});

struct FigurePlacement {
    std::string label;
    double x = 0.0;            // cm, lateral
    double depth = 0.0;        // cm from the eye
    double real_height = 0.0;  // cm
};

// Inverts the projection for one figure: a base mark t above the bottom
// edge stands at depth D*H / (horizon_above_base - t).
FigurePlacement locate_figure(const Annotation& annotation, double H, double D,
                              const FigureMark& mark);

struct ViewerEstimate {
    double H = 0.0;
    double D = 0.0;
    MethodH method_H = MethodH::horizon_mark;
    MethodD method_D = MethodD::distance_point;
    std::vector<double> knee_residuals;
    std::vector<double> distance_residuals;
    std::vector<FigurePlacement> figures;
};

ViewerEstimate reconstruct_scene(const Annotation& annotation,
                                 const ReconstructOptions& options = {});

}  // namespace perspectiva
