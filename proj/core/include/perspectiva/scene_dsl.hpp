#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "perspectiva/scene.hpp"

// Plain-text scene format. One statement per line, '#' starts a comment:
//
//   viewer height NUM distance NUM
//   canvas width NUM height NUM [base (floor|NUM)]
//   braccio NUM
//   line at (NUM, NUM, NUM) dir (NUM, NUM, NUM)
//   floor tiles INT x INT size NUM [by NUM] [offset NUM]
//   figure STRING at (NUM, NUM) height NUM
//
// Lengths are centimetres unless the number carries a "br" suffix
// (braccia), e.g. "viewer height 3br distance 2.5br". Direction components
// are unitless. The viewer statement is mandatory; a missing canvas
// defaults to the square of side six braccia resting on the floor.
// "figure ... at (x, depth)" measures depth from the eye, like the y axis.

namespace perspectiva {

struct SourceSpan {
    int line = 1;    // 1-based
    int column = 1;  // 1-based, bytes
};

struct ParseError {
    SourceSpan span;
    std::string expected;
    std::string found;

    std::string message() const;
};

// Never throws on malformed text; every failure comes back as ParseError.
// default_braccio_cm seeds the braccia unit and is superseded by a
// braccio statement inside the text itself.
std::variant<Scene, ParseError> parse_scene(std::string_view text,
                                            double default_braccio_cm = kDefaultBraccioCm);

// Canonical form: fixed statement order, centimetre numbers printed with
// shortest round-trip precision, square floors without the "by" clause,
// zero offsets and floor-level bases omitted. parse_scene(print_scene(s))
// reproduces s field for field. Line extents have no textual form and are
// dropped.
std::string print_scene(const Scene& scene);

}  // namespace perspectiva
