#pragma once

#include <map>
#include <string>

#include "perspectiva/alberti.hpp"
#include "perspectiva/projector.hpp"
#include "perspectiva/reconstruct.hpp"

// JSON plumbing for the command line surface. One shared report schema
// covers both the projector and the two-dimensional construction, with
// canvas coordinates in normalised units (one unit = the eye-canvas
// distance), so the two outputs can be compared directly. Keys are
// emitted in sorted order and numbers rounded to 12 significant digits;
// equal inputs give byte-equal text.

namespace perspectiva {

std::string report_to_json(const ProjectionReport& report);
std::string grid_to_json(const AlbertiGrid& grid);

std::string estimate_to_json(const ViewerEstimate& estimate);

std::string annotation_to_json(const Annotation& annotation);
// Throws DomainError("invalid-annotation") on malformed or unusable text.
Annotation annotation_from_json(const std::string& text);

// Vanishing point table with the member cross-check, for the vanishing
// subcommand.
std::string families_to_json(const std::map<std::string, FamilyEntry>& families);

}  // namespace perspectiva
