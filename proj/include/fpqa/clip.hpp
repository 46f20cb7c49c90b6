#pragma once

#include "fpqa/geometry.hpp"

namespace fpqa {

// Area of a ∩ b. Both polygons must pass normalization; holes are honored.
// Symmetric, returns 0 for disjoint inputs.
double intersection_area(const Polygon& a, const Polygon& b);

// |a| + |b| − |a ∩ b|.
double union_area(const Polygon& a, const Polygon& b);

// Area of p clipped to a convex CCW cell ring (closed).
double area_in_cell(const Polygon& p, const Ring& convex_cell);

// Area of a ∩ b ∩ cell for a convex CCW cell ring (closed).
double intersection_area_in_cell(const Polygon& a, const Polygon& b, const Ring& convex_cell);

}  // namespace fpqa
