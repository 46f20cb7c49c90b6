#pragma once

#include <vector>

#include "fpqa/hexgrid.hpp"
#include "fpqa/overlap.hpp"

namespace fpqa {

// Intersection over union of two polygons. 0 for disjoint, 1 for identical
// regions. Raises undefined-score when the union has no area.
double jaccard(const Polygon& a, const Polygon& b);

inline constexpr double kSignificanceThreshold = 0.51;

// Keeps pairs whose intersection covers at least `threshold` of the OBD
// polygon (inclusive). Raises usage for threshold outside (0, 1].
std::vector<OverlapPair> filter_significant(const std::vector<OverlapPair>& pairs,
                                            double threshold = kSignificanceThreshold);

// Membership guard for "the pair's intersection region meets this cell":
// the triple intersection area must exceed this (absorbs FP noise around 0).
inline constexpr double kCellMembershipEpsilon = 1e-9;  // m²

// Fills stats.mean_iou and stats.pair_count on every grid cell. A pair
// contributes its full-polygon IoU to every cell its intersection region
// meets; cells with no pairs keep mean_iou undefined. Pass the
// significance-filtered pair list unless filtering is disabled.
void mean_iou_per_cell(const std::vector<OverlapPair>& pairs, const Layer& obd,
                       const Layer& ref, HexGrid& grid, Exec exec = Exec::parallel);

// Fills stats.obd_area, stats.ref_area (building areas clipped to the cell)
// and stats.completeness = obd_area / ref_area (undefined when ref_area is 0).
void completeness_per_cell(const Layer& obd, const Layer& ref, HexGrid& grid,
                           Exec exec = Exec::parallel);

// Arithmetic mean of pair IoUs. Raises undefined-score on an empty list.
double dataset_avg_iou(const std::vector<OverlapPair>& pairs);

}  // namespace fpqa
