#pragma once

#include <string>
#include <vector>

#include "fpqa/layer.hpp"

namespace fpqa {

// Reads a GeoJSON FeatureCollection of Polygon/MultiPolygon features in
// WGS84 lon/lat order, explodes multipolygons, normalizes rings, drops and
// counts invalid features, projects into the zone, and assigns ids 0..n−1
// in file order. Projected inputs are rejected unless already_projected is
// set (coordinates are then taken as metres in the given zone).
Layer read_layer(const std::string& path, Source role, const TmZoneSpec& zone,
                 bool already_projected = false);

// Serializes back to GeoJSON (lon/lat via the inverse projection) with
// `id` and `source` added to each feature's properties.
std::string layer_to_geojson(const Layer& layer);

// All valid polygons from a boundary file, projected into the zone.
std::vector<Polygon> read_boundary_polygons(const std::string& path, const TmZoneSpec& zone,
                                            bool already_projected = false);

// Keeps footprints whose centroid lies inside any boundary polygon
// (boundary-inclusive). Geometry is never cut; ids are preserved.
Layer clip_to_boundary(const Layer& layer, const std::vector<Polygon>& boundary);

// Standard UTM zone for the mean vertex position of a geographic GeoJSON
// file; the default when no zone override is configured.
TmZoneSpec derive_zone_from_file(const std::string& path);

}  // namespace fpqa
