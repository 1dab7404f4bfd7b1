#pragma once

#include "gbc/geometry.hpp"

namespace gbc::cli {

// Preset name, or path to a geometry spec file (flat key = value text with
// expression-valued metric and contorsion entries).
geom::GeometrySpec load_geometry(const std::string& source, double amplitude = 0.3);

geom::GeometrySpec parse_geometry_file(const std::string& path);

}  // namespace gbc::cli
