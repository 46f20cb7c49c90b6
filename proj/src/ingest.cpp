#include "fpqa/ingest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fpqa/errors.hpp"

namespace fpqa {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise("io", "cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        raise("io", path + ": " + e.what());
    }
    return doc;
}

const json& feature_array(const json& doc, const std::string& path) {
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array()) {
        raise("io", path + ": not a GeoJSON FeatureCollection");
    }
    return doc["features"];
}

Ring parse_position_ring(const json& coords, const std::string& path) {
    Ring r;
    if (!coords.is_array()) raise("io", path + ": ring coordinates must be an array");
    r.reserve(coords.size());
    for (const json& pos : coords) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
            raise("io", path + ": positions must be [lon, lat] numbers");
        }
        r.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
    return r;
}

// raw geographic (or projected) rings of one polygon
std::vector<Ring> parse_polygon_rings(const json& coords, const std::string& path) {
    std::vector<Ring> rings;
    if (!coords.is_array() || coords.empty()) raise("io", path + ": empty polygon coordinates");
    for (const json& rc : coords) rings.push_back(parse_position_ring(rc, path));
    return rings;
}

void check_geographic(const std::vector<Ring>& rings, const std::string& path) {
    for (const Ring& r : rings) {
        for (const Point2& p : r) {
            if (std::abs(p.x) > 180.0 || std::abs(p.y) > 90.0) {
                raise("io", path + ": coordinates are outside lon/lat range; " +
                                "pass --already-projected for projected input");
            }
        }
    }
}

Polygon project_polygon(const std::vector<Ring>& rings, const Projector* proj) {
    Polygon p;
    bool first = true;
    for (const Ring& r : rings) {
        Ring out;
        out.reserve(r.size());
        for (const Point2& v : r) {
            out.push_back(proj != nullptr ? proj->forward(v.x, v.y) : v);
        }
        if (first) {
            p.exterior = std::move(out);
            first = false;
        } else {
            p.holes.push_back(std::move(out));
        }
    }
    return p;
}

json ring_to_coords(const Ring& r, const Projector& proj) {
    json out = json::array();
    for (const Point2& p : r) {
        double lon = 0.0, lat = 0.0;
        proj.inverse(p, lon, lat);
        out.push_back(json::array({lon, lat}));
    }
    return out;
}

}  // namespace

Layer read_layer(const std::string& path, Source role, const TmZoneSpec& zone,
                 bool already_projected) {
    json doc = parse_file(path);
    const json& features = feature_array(doc, path);

    Projector projector(zone);
    Layer layer;
    layer.zone = zone;
    layer.provenance = std::filesystem::path(path).filename().string();

    int next_id = 0;
    for (std::size_t fi = 0; fi < features.size(); ++fi) {
        const json& feature = features[fi];
        if (!feature.is_object() || !feature.contains("geometry") || feature["geometry"].is_null()) {
            ++layer.skipped_count;
            continue;
        }
        const json& geom = feature["geometry"];
        std::string type = geom.value("type", "");
        std::vector<std::vector<Ring>> polygons;
        if (type == "Polygon") {
            polygons.push_back(parse_polygon_rings(geom["coordinates"], path));
        } else if (type == "MultiPolygon") {
            if (!geom["coordinates"].is_array()) raise("io", path + ": bad MultiPolygon");
            for (const json& pc : geom["coordinates"]) {
                polygons.push_back(parse_polygon_rings(pc, path));
            }
        } else {
            ++layer.skipped_count;
            continue;
        }
        for (const std::vector<Ring>& rings : polygons) {
            if (!already_projected) check_geographic(rings, path);
            Polygon projected;
            try {
                projected = project_polygon(rings, already_projected ? nullptr : &projector);
                projected = normalize(projected);
            } catch (const Error&) {
                ++layer.dropped_count;
                continue;
            }
            if (!valid_for_analysis(projected)) {
                ++layer.dropped_count;
                continue;
            }
            Footprint fp;
            fp.id = next_id++;
            fp.geometry = std::move(projected);
            fp.source = role;
            fp.original_feature_index = static_cast<int>(fi);
            refresh_footprint(fp);
            layer.footprints.push_back(std::move(fp));
        }
    }
    if (layer.footprints.empty()) {
        raise("empty-layer", path + ": no valid polygon features");
    }
    return layer;
}

std::string layer_to_geojson(const Layer& layer) {
    Projector proj(layer.zone);
    json features = json::array();
    for (const Footprint& fp : layer.footprints) {
        json coords = json::array();
        coords.push_back(ring_to_coords(fp.geometry.exterior, proj));
        for (const Ring& h : fp.geometry.holes) coords.push_back(ring_to_coords(h, proj));
        json feature = {
            {"type", "Feature"},
            {"properties",
             {{"id", fp.id},
              {"source", source_name(fp.source)},
              {"original_feature_index", fp.original_feature_index}}},
            {"geometry", {{"type", "Polygon"}, {"coordinates", coords}}},
        };
        features.push_back(std::move(feature));
    }
    json doc = {{"type", "FeatureCollection"}, {"features", features}};
    return doc.dump(2) + "\n";
}

std::vector<Polygon> read_boundary_polygons(const std::string& path, const TmZoneSpec& zone,
                                            bool already_projected) {
    json doc = parse_file(path);
    const json& features = feature_array(doc, path);
    Projector projector(zone);
    std::vector<Polygon> out;
    for (const json& feature : features) {
        if (!feature.is_object() || !feature.contains("geometry") || feature["geometry"].is_null()) {
            continue;
        }
        const json& geom = feature["geometry"];
        std::string type = geom.value("type", "");
        std::vector<std::vector<Ring>> polygons;
        if (type == "Polygon") {
            polygons.push_back(parse_polygon_rings(geom["coordinates"], path));
        } else if (type == "MultiPolygon") {
            for (const json& pc : geom["coordinates"]) {
                polygons.push_back(parse_polygon_rings(pc, path));
            }
        } else {
            continue;
        }
        for (const std::vector<Ring>& rings : polygons) {
            if (!already_projected) check_geographic(rings, path);
            try {
                Polygon p = normalize(project_polygon(rings, already_projected ? nullptr : &projector));
                if (valid_for_analysis(p)) out.push_back(std::move(p));
            } catch (const Error&) {
                // skip unusable boundary parts
            }
        }
    }
    if (out.empty()) raise("empty-layer", path + ": no valid boundary polygons");
    return out;
}

Layer clip_to_boundary(const Layer& layer, const std::vector<Polygon>& boundary) {
    Layer out;
    out.zone = layer.zone;
    out.provenance = layer.provenance;
    out.dropped_count = layer.dropped_count;
    out.skipped_count = layer.skipped_count;
    for (const Footprint& fp : layer.footprints) {
        Point2 c = centroid(fp.geometry);
        for (const Polygon& b : boundary) {
            if (point_in_polygon(c, b)) {
                out.footprints.push_back(fp);
                break;
            }
        }
    }
    return out;
}

TmZoneSpec derive_zone_from_file(const std::string& path) {
    json doc = parse_file(path);
    const json& features = feature_array(doc, path);
    double sum_lon = 0.0, sum_lat = 0.0;
    long long count = 0;
    for (const json& feature : features) {
        if (!feature.is_object() || !feature.contains("geometry") || feature["geometry"].is_null()) {
            continue;
        }
        const json& geom = feature["geometry"];
        std::string type = geom.value("type", "");
        auto scan_ring = [&](const json& ring) {
            for (const json& pos : ring) {
                if (pos.is_array() && pos.size() >= 2 && pos[0].is_number() && pos[1].is_number()) {
                    sum_lon += pos[0].get<double>();
                    sum_lat += pos[1].get<double>();
                    ++count;
                }
            }
        };
        if (type == "Polygon" && geom["coordinates"].is_array()) {
            for (const json& ring : geom["coordinates"]) scan_ring(ring);
        } else if (type == "MultiPolygon" && geom["coordinates"].is_array()) {
            for (const json& poly : geom["coordinates"]) {
                if (!poly.is_array()) continue;
                for (const json& ring : poly) scan_ring(ring);
            }
        }
    }
    if (count == 0) raise("empty-layer", path + ": no coordinates to derive a zone from");
    double lon = sum_lon / static_cast<double>(count);
    double lat = sum_lat / static_cast<double>(count);
    if (std::abs(lon) > 180.0 || std::abs(lat) > 90.0) {
        raise("usage", path + ": cannot derive a UTM zone from projected coordinates; "
                       "pass --utm-zone");
    }
    return utm_zone_for(lon, lat);
}

}  // namespace fpqa
