#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "fpqa/geometry.hpp"
#include "fpqa/layer.hpp"
#include "fpqa/parallel.hpp"

namespace fpqa {

struct CellStats {
    std::optional<double> mean_iou;      // defined iff pair_count > 0
    int pair_count = 0;                  // N_h
    std::optional<double> completeness;  // defined iff ref_area > 0
    double obd_area = 0.0;               // clipped to the cell, m²
    double ref_area = 0.0;
};

struct HexCell {
    int cell_id = -1;
    Point2 center;
    double apothem = 0.0;
    Polygon geometry;  // regular flat-top hexagon, closed CCW ring
    CellStats stats;
};

// Flat-top hexagon lattice anchored at the envelope min corner. Cells are
// ordered row-major (lattice row, then column) and ids are dense 0..n−1.
class HexGrid {
public:
    HexGrid() = default;
    HexGrid(double apothem, Point2 origin, std::vector<HexCell> cells,
            std::vector<std::pair<int, int>> lattice_coords);

    const std::vector<HexCell>& cells() const { return cells_; }
    std::vector<HexCell>& cells() { return cells_; }
    double apothem() const { return apothem_; }
    double circumradius() const;
    Point2 origin() const { return origin_; }

    // Ids of existing cells whose bounding box overlaps the query envelope,
    // ascending. Derived from lattice arithmetic, no search structure.
    std::vector<int> cells_overlapping(const Envelope& q) const;

private:
    double apothem_ = 0.0;
    Point2 origin_;
    std::vector<HexCell> cells_;
    std::map<std::pair<int, int>, int> by_coord_;  // (col,row) -> cell_id
    int col_min_ = 0, col_max_ = -1, row_min_ = 0, row_max_ = -1;
};

// Covers the envelope entirely; every neighboring pair shares an edge.
// Raises grid-too-fine when the lattice would exceed max_cells.
HexGrid build_grid(const Envelope& envelope, double apothem,
                   std::size_t max_cells = 10'000'000);

// Per-cell lists of footprint ids whose geometry intersects the cell
// (boundary touching counts, so one footprint may appear in several cells).
// Result is indexed by cell_id; each list is ascending.
std::vector<std::vector<int>> join_to_cells(const Layer& layer, const HexGrid& grid,
                                            Exec exec = Exec::parallel);

}  // namespace fpqa
