#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fpqa/layer.hpp"
#include "fpqa/registration.hpp"

namespace fpqa {

// Configuration for a synthetic ground-truth scene: rectangles with
// log-normal areas placed without envelope overlap, then degraded into an
// OBD copy by dropout, a global shift, per-building rotation, and vertex
// jitter. Deterministic for a given seed.
struct SceneConfig {
    int n_buildings = 100;
    Envelope area_bounds{0.0, 0.0, 1000.0, 1000.0};  // metres
    double size_mu = 4.7;     // ln m²
    double size_sigma = 0.5;  // ln m²
    double dropout = 0.0;     // fraction of buildings removed from the OBD copy
    double translate_x = 0.0;  // metres
    double translate_y = 0.0;
    double rotation_deg = 0.0;  // about each building centroid
    double vertex_jitter_sigma = 0.0;  // metres
    std::uint64_t seed = 1;
};

struct Scene {
    Layer ref;
    Layer obd;
    std::vector<std::pair<int, int>> truth;  // (obd_id, ref_id), ascending obd_id
};

// Raises density-too-high when rejection sampling cannot place a building.
Scene generate_scene(const SceneConfig& cfg,
                     const TmZoneSpec& zone = utm_zone_spec(31, Hemisphere::north));

}  // namespace fpqa
