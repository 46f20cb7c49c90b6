#include "fpqa/hexgrid.hpp"

#include <algorithm>
#include <cmath>

#include "fpqa/errors.hpp"

// Flat-top hexagons with apothem a (center-to-edge) and circumradius
// R = 2a/√3. Lattice: column spacing 1.5R, row spacing 2a, odd columns
// shifted up by a. Cell (0,0) is centered on the envelope min corner.

namespace fpqa {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935274463415058724;

int floor_div_parity(long long col) {
    // parity valid for negative columns too
    return static_cast<int>(((col % 2) + 2) % 2);
}

Polygon hexagon_at(const Point2& c, double apothem) {
    double r = 2.0 * apothem / kSqrt3;
    Polygon p;
    p.exterior = {
        {c.x + r, c.y},
        {c.x + r / 2.0, c.y + apothem},
        {c.x - r / 2.0, c.y + apothem},
        {c.x - r, c.y},
        {c.x - r / 2.0, c.y - apothem},
        {c.x + r / 2.0, c.y - apothem},
        {c.x + r, c.y},
    };
    return p;
}

}  // namespace

HexGrid::HexGrid(double apothem, Point2 origin, std::vector<HexCell> cells,
                 std::vector<std::pair<int, int>> lattice_coords)
    : apothem_(apothem), origin_(origin), cells_(std::move(cells)) {
    for (std::size_t i = 0; i < lattice_coords.size(); ++i) {
        by_coord_[lattice_coords[i]] = static_cast<int>(i);
        const auto& [col, row] = lattice_coords[i];
        if (i == 0) {
            col_min_ = col_max_ = col;
            row_min_ = row_max_ = row;
        } else {
            col_min_ = std::min(col_min_, col);
            col_max_ = std::max(col_max_, col);
            row_min_ = std::min(row_min_, row);
            row_max_ = std::max(row_max_, row);
        }
    }
}

double HexGrid::circumradius() const { return 2.0 * apothem_ / kSqrt3; }

std::vector<int> HexGrid::cells_overlapping(const Envelope& q) const {
    std::vector<int> out;
    if (cells_.empty() || apothem_ <= 0.0) return out;
    double r = circumradius();
    double col_pitch = 1.5 * r;
    long long col0 = static_cast<long long>(std::floor((q.min_x - origin_.x - r) / col_pitch)) - 1;
    long long col1 = static_cast<long long>(std::ceil((q.max_x - origin_.x + r) / col_pitch)) + 1;
    col0 = std::max<long long>(col0, col_min_);
    col1 = std::min<long long>(col1, col_max_);
    for (long long col = col0; col <= col1; ++col) {
        double off = floor_div_parity(col) ? apothem_ : 0.0;
        long long row0 =
            static_cast<long long>(std::floor((q.min_y - origin_.y - off - apothem_) / (2.0 * apothem_))) - 1;
        long long row1 =
            static_cast<long long>(std::ceil((q.max_y - origin_.y - off + apothem_) / (2.0 * apothem_))) + 1;
        row0 = std::max<long long>(row0, row_min_);
        row1 = std::min<long long>(row1, row_max_);
        for (long long row = row0; row <= row1; ++row) {
            auto it = by_coord_.find({static_cast<int>(col), static_cast<int>(row)});
            if (it == by_coord_.end()) continue;
            const HexCell& cell = cells_[static_cast<std::size_t>(it->second)];
            Envelope ce{cell.center.x - r, cell.center.y - apothem_, cell.center.x + r,
                        cell.center.y + apothem_};
            if (ce.overlaps(q)) out.push_back(it->second);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

HexGrid build_grid(const Envelope& envelope, double apothem, std::size_t max_cells) {
    if (!(apothem > 0.0)) raise("usage", "apothem must be positive");
    if (!(envelope.min_x <= envelope.max_x && envelope.min_y <= envelope.max_y) ||
        !std::isfinite(envelope.min_x) || !std::isfinite(envelope.max_y)) {
        raise("degenerate-input", "invalid envelope");
    }
    double r = 2.0 * apothem / kSqrt3;
    double col_pitch = 1.5 * r;
    // lattice indices relative to the origin (= envelope min corner)
    long long col0 = static_cast<long long>(std::floor(-r / col_pitch)) - 1;
    long long col1 = static_cast<long long>(std::ceil((envelope.width() + r) / col_pitch)) + 1;
    long long rows_estimate =
        static_cast<long long>((envelope.height() + 4.0 * apothem) / (2.0 * apothem)) + 3;
    long long cols_estimate = col1 - col0 + 1;
    if (cols_estimate * rows_estimate > static_cast<long long>(max_cells)) {
        raise("grid-too-fine", "lattice would exceed " + std::to_string(max_cells) + " cells");
    }

    struct Slot {
        int row, col;
        Point2 center;
    };
    std::vector<Slot> slots;
    for (long long col = col0; col <= col1; ++col) {
        double cx = envelope.min_x + static_cast<double>(col) * col_pitch;
        if (cx + r < envelope.min_x || cx - r > envelope.max_x) continue;
        double off = floor_div_parity(col) ? apothem : 0.0;
        long long row0 =
            static_cast<long long>(std::floor((-off - apothem) / (2.0 * apothem))) - 1;
        long long row1 = static_cast<long long>(
            std::ceil((envelope.height() - off + apothem) / (2.0 * apothem))) + 1;
        for (long long row = row0; row <= row1; ++row) {
            double cy = envelope.min_y + off + static_cast<double>(row) * 2.0 * apothem;
            if (cy + apothem < envelope.min_y || cy - apothem > envelope.max_y) continue;
            slots.push_back({static_cast<int>(row), static_cast<int>(col), {cx, cy}});
        }
    }
    std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
        return a.row < b.row || (a.row == b.row && a.col < b.col);
    });
    if (slots.size() > max_cells) {
        raise("grid-too-fine", "lattice would exceed " + std::to_string(max_cells) + " cells");
    }

    std::vector<HexCell> cells;
    std::vector<std::pair<int, int>> coords;
    cells.reserve(slots.size());
    coords.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        HexCell cell;
        cell.cell_id = static_cast<int>(i);
        cell.center = slots[i].center;
        cell.apothem = apothem;
        cell.geometry = hexagon_at(slots[i].center, apothem);
        cells.push_back(std::move(cell));
        coords.emplace_back(slots[i].col, slots[i].row);
    }
    return HexGrid(apothem, {envelope.min_x, envelope.min_y}, std::move(cells), std::move(coords));
}

std::vector<std::vector<int>> join_to_cells(const Layer& layer, const HexGrid& grid, Exec exec) {
    const std::size_t n = layer.footprints.size();
    std::vector<std::vector<int>> per_footprint(n);
    for_each_index(n, exec, [&](std::size_t i) {
        const Footprint& fp = layer.footprints[i];
        for (int cid : grid.cells_overlapping(fp.envelope)) {
            const HexCell& cell = grid.cells()[static_cast<std::size_t>(cid)];
            if (polygons_intersect(fp.geometry, cell.geometry)) {
                per_footprint[i].push_back(cid);
            }
        }
    });
    std::vector<std::vector<int>> per_cell(grid.cells().size());
    for (std::size_t i = 0; i < n; ++i) {
        for (int cid : per_footprint[i]) {
            per_cell[static_cast<std::size_t>(cid)].push_back(layer.footprints[i].id);
        }
    }
    return per_cell;
}

}  // namespace fpqa
