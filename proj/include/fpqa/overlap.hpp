#pragma once

#include <vector>

#include "fpqa/layer.hpp"
#include "fpqa/parallel.hpp"

namespace fpqa {

// One OBD/reference polygon pair with positive intersection area.
struct OverlapPair {
    int obd_id = -1;
    int ref_id = -1;
    double intersection_m2 = 0.0;
    double union_m2 = 0.0;
    double iou = 0.0;           // intersection / union, in (0,1]
    double obd_coverage = 0.0;  // intersection / OBD polygon area, in (0,1]
};

struct OverlapReport {
    long long total_obd = 0;
    long long total_ref = 0;
    // distinct-id cardinalities behind the percentages
    long long overlapping_obd = 0;
    long long overlapping_ref = 0;
    long long multi_overlay_obd = 0;
    long long multi_overlay_ref = 0;
    double oop_pct = 0.0;
    double orp_pct = 0.0;
    double noop_pct = 0.0;
    double norp_pct = 0.0;
    double omo_pct = 0.0;
    double rmo_pct = 0.0;
    double avg_iou = 0.0;
    bool avg_iou_defined = false;  // false when there are no pairs
};

// Default guard against sliver intersections from coordinate rounding.
inline constexpr double kAreaEpsilon = 1e-6;  // m²

// One pair per (obd, ref) combination whose intersection area exceeds
// area_epsilon. Candidates come from an envelope index and are confirmed by
// exact intersection. Output is sorted by (obd_id, ref_id) and
// deterministic under both execution policies.
std::vector<OverlapPair> find_pairs(const Layer& obd, const Layer& ref,
                                    double area_epsilon = kAreaEpsilon,
                                    Exec exec = Exec::parallel);

// Distinct-id counting over the pair list. Raises undefined-percentage when
// either total is zero.
OverlapReport overlap_report(const std::vector<OverlapPair>& pairs,
                             long long total_obd, long long total_ref);

}  // namespace fpqa
