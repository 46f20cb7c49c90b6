#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fpqa/hexgrid.hpp"
#include "fpqa/overlap.hpp"
#include "fpqa/registration.hpp"
#include "fpqa/size_stats.hpp"
#include "fpqa/synth.hpp"

namespace fpqa {

// Shortest round-trip decimal form; the one double formatter used in every
// emitted file so artifacts are byte-stable.
std::string format_double(double v);

std::string overlap_report_csv(const std::string& city, const std::string& provider,
                               const OverlapReport& report);
std::string accuracy_report_csv(const std::string& provider, const std::string& city,
                                const AccuracyReport& report, const AffineFit& fit);
std::string size_stats_csv(const std::string& city, const SizeStats& stats);
std::string size_histogram_csv(const SizeStats& stats);
std::string overlap_histogram_csv(const OverlapReport& report);
std::string truth_csv(const std::vector<std::pair<int, int>>& truth);

// Hexbin GeoJSON: one polygon feature per cell (lon/lat), properties
// cell_id, mean_iou (number|null), pair_count, completeness (number|null),
// obd_area, ref_area. Top-level foreign members carry the zone token and
// apothem so the grid can be reloaded in metres.
std::string grid_to_geojson(const HexGrid& grid, const TmZoneSpec& zone);
HexGrid grid_from_geojson(const std::string& text, TmZoneSpec* zone_out = nullptr);

// Dark-to-light perceptually-uniform ramp (viridis anchors), t in [0,1].
std::array<std::uint8_t, 3> ramp_color(double t);

// One SVG path per cell; the attribute (mean_iou, completeness or
// pair_count) is mapped linearly onto the ramp; undefined cells are hatched
// grey; a legend carries min/mid/max labels. Raises usage for unknown
// attributes or an empty grid.
std::string render_hexbin_svg(const HexGrid& grid, const std::string& attribute);

// FNV-1a 64-bit, hex string; used for manifest content hashes.
std::string content_hash(const std::string& bytes);

std::string manifest_json(const std::string& command,
                          const std::map<std::string, std::string>& inputs,
                          const std::map<std::string, std::string>& config,
                          const std::map<std::string, std::string>& output_hashes);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace fpqa
