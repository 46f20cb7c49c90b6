#include "fpqa/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "fpqa/clip.hpp"
#include "fpqa/errors.hpp"

namespace fpqa {

double jaccard(const Polygon& a, const Polygon& b) {
    double inter = intersection_area(a, b);
    double uni = polygon_area(a) + polygon_area(b) - inter;
    if (uni <= 0.0) raise("undefined-score", "jaccard of two zero-area polygons");
    return std::min(inter / uni, 1.0);
}

std::vector<OverlapPair> filter_significant(const std::vector<OverlapPair>& pairs,
                                            double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        raise("usage", "significance threshold must be in (0, 1]");
    }
    std::vector<OverlapPair> kept;
    kept.reserve(pairs.size());
    for (const OverlapPair& p : pairs) {
        if (p.obd_coverage >= threshold) kept.push_back(p);
    }
    return kept;
}

void mean_iou_per_cell(const std::vector<OverlapPair>& pairs, const Layer& obd, const Layer& ref,
                       HexGrid& grid, Exec exec) {
    const std::size_t n = pairs.size();
    // resolve ids up front; throwing from inside the parallel region is not an option
    std::vector<const Footprint*> obd_fp(n), ref_fp(n);
    for (std::size_t i = 0; i < n; ++i) {
        obd_fp[i] = obd.by_id(pairs[i].obd_id);
        ref_fp[i] = ref.by_id(pairs[i].ref_id);
        if (obd_fp[i] == nullptr || ref_fp[i] == nullptr) {
            raise("usage", "pair references an unknown footprint id");
        }
    }
    std::vector<std::vector<int>> memberships(n);
    for_each_index(n, exec, [&](std::size_t i) {
        const Footprint* a = obd_fp[i];
        const Footprint* b = ref_fp[i];
        Envelope common = Envelope::intersect(a->envelope, b->envelope);
        for (int cid : grid.cells_overlapping(common)) {
            const HexCell& cell = grid.cells()[static_cast<std::size_t>(cid)];
            double a3 = intersection_area_in_cell(a->geometry, b->geometry, cell.geometry.exterior);
            if (a3 > kCellMembershipEpsilon) memberships[i].push_back(cid);
        }
    });

    std::vector<double> sums(grid.cells().size(), 0.0);
    std::vector<int> counts(grid.cells().size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (int cid : memberships[i]) {
            sums[static_cast<std::size_t>(cid)] += pairs[i].iou;
            counts[static_cast<std::size_t>(cid)] += 1;
        }
    }
    for (std::size_t c = 0; c < grid.cells().size(); ++c) {
        HexCell& cell = grid.cells()[c];
        cell.stats.pair_count = counts[c];
        if (counts[c] > 0) {
            cell.stats.mean_iou = sums[c] / static_cast<double>(counts[c]);
        } else {
            cell.stats.mean_iou.reset();
        }
    }
}

void completeness_per_cell(const Layer& obd, const Layer& ref, HexGrid& grid, Exec exec) {
    std::vector<std::vector<int>> obd_join = join_to_cells(obd, grid, exec);
    std::vector<std::vector<int>> ref_join = join_to_cells(ref, grid, exec);

    const std::size_t n_cells = grid.cells().size();
    for_each_index(n_cells, exec, [&](std::size_t c) {
        HexCell& cell = grid.cells()[c];
        double obd_area = 0.0;
        for (int id : obd_join[c]) {
            obd_area += area_in_cell(obd.by_id(id)->geometry, cell.geometry.exterior);
        }
        double ref_area = 0.0;
        for (int id : ref_join[c]) {
            ref_area += area_in_cell(ref.by_id(id)->geometry, cell.geometry.exterior);
        }
        cell.stats.obd_area = obd_area;
        cell.stats.ref_area = ref_area;
        if (ref_area > 0.0) {
            cell.stats.completeness = obd_area / ref_area;
        } else {
            cell.stats.completeness.reset();
        }
    });
}

double dataset_avg_iou(const std::vector<OverlapPair>& pairs) {
    if (pairs.empty()) raise("undefined-score", "average IoU of an empty pair list");
    double s = 0.0;
    for (const OverlapPair& p : pairs) s += p.iou;
    return s / static_cast<double>(pairs.size());
}

}  // namespace fpqa
