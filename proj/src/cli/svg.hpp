#pragma once

#include <string>
#include <vector>

#include "projgeom/tensors.hpp"

namespace projgeom::cli {

using Polyline = std::vector<Point>;

// SVG 1.1 document with two layer groups, `original` and `straightened`. The viewBox covers the
// data extent of both layers plus a 5% margin; chart y points up.
std::string render_svg(const std::vector<Polyline>& original, const std::vector<Polyline>& straightened);

}  // namespace projgeom::cli
