#pragma once

#include <string>
#include <vector>

#include "arearel/draw.hpp"
#include "arearel/tri.hpp"

namespace arearel {

struct RenderOptions {
  std::vector<int> colors;                ///< per triangle, 0 or 1; empty for a neutral fill
  std::vector<Constraint> constraints;    ///< drawn dotted, with dots in doomed triangles
  std::vector<int> doomed;                ///< triangles to mark with a dot
};

/// SVG of a real drawing scaled into the unit square (y up). Nondegenerate
/// triangles are filled; degenerate ones only contribute their edges.
/// Throws std::invalid_argument("complex drawings are not renderable") when
/// some coordinate has a nonzero imaginary part.
std::string render_svg(const Triangulation& t, const Drawing& d, const RenderOptions& opt = {});

/// Constraints and doomed triangles taken from `ct`.
std::string render_svg(const ConstrainedTriangulation& ct, const Drawing& d, std::vector<int> colors = {});

}  // namespace arearel
