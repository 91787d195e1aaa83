#pragma once

#include "cavity/geometry.hpp"
#include "cavity/kinematics.hpp"

#include <string>
#include <vector>

namespace cavity {

/// Path-line figure: cavity outline, streamline polylines, and one marker per
/// stagnation point (circle = center, square = saddle, diamond = degenerate).
/// The viewBox is the triangle's bounding box grown by 5% on each side; y points up.
std::string render_flow_svg(const TriangleDomain& d, const std::vector<Streamline>& lines,
                            const std::vector<StagnationPoint>& stagnation, const std::string& title);

}  // namespace cavity
