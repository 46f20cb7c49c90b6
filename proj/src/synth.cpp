#include "fpqa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fpqa/errors.hpp"
#include "fpqa/rng.hpp"

namespace fpqa {

namespace {

constexpr int kMaxPlacementAttempts = 200;
constexpr int kMaxJitterAttempts = 10;

Polygon rectangle(double cx, double cy, double w, double h) {
    Polygon p;
    p.exterior = {
        {cx - w / 2.0, cy - h / 2.0},
        {cx + w / 2.0, cy - h / 2.0},
        {cx + w / 2.0, cy + h / 2.0},
        {cx - w / 2.0, cy + h / 2.0},
        {cx - w / 2.0, cy - h / 2.0},
    };
    return p;
}

Polygon perturb(const Polygon& g, const SceneConfig& cfg, Rng& rng) {
    Polygon out = g;
    if (cfg.rotation_deg != 0.0) {
        Point2 c = centroid(out);
        double rad = cfg.rotation_deg * 3.141592653589793238462643383279502884 / 180.0;
        double cs = std::cos(rad), sn = std::sin(rad);
        for (Point2& p : out.exterior) {
            double dx = p.x - c.x, dy = p.y - c.y;
            p = {c.x + cs * dx - sn * dy, c.y + sn * dx + cs * dy};
        }
    }
    for (Point2& p : out.exterior) {
        p.x += cfg.translate_x;
        p.y += cfg.translate_y;
    }
    if (cfg.vertex_jitter_sigma > 0.0) {
        // jitter distinct vertices, keep the ring closed
        for (std::size_t i = 0; i + 1 < out.exterior.size(); ++i) {
            out.exterior[i].x += rng.normal(0.0, cfg.vertex_jitter_sigma);
            out.exterior[i].y += rng.normal(0.0, cfg.vertex_jitter_sigma);
        }
        out.exterior.back() = out.exterior.front();
    }
    return out;
}

}  // namespace

Scene generate_scene(const SceneConfig& cfg, const TmZoneSpec& zone) {
    if (cfg.n_buildings < 1) raise("usage", "scene needs at least one building");
    if (!(cfg.dropout >= 0.0 && cfg.dropout <= 1.0)) raise("usage", "dropout must be in [0, 1]");
    if (!(cfg.size_sigma >= 0.0)) raise("usage", "size sigma must be non-negative");
    if (!(cfg.area_bounds.width() > 0.0 && cfg.area_bounds.height() > 0.0)) {
        raise("usage", "scene bounds must have positive extent");
    }

    Rng rng(cfg.seed);
    const Envelope& bounds = cfg.area_bounds;

    Scene scene;
    scene.ref.zone = zone;
    scene.ref.provenance = "synthetic reference";
    scene.obd.zone = zone;
    scene.obd.provenance = "synthetic OBD";

    std::vector<Envelope> placed;
    placed.reserve(static_cast<std::size_t>(cfg.n_buildings));
    for (int i = 0; i < cfg.n_buildings; ++i) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxPlacementAttempts && !ok; ++attempt) {
            double area = std::exp(rng.normal(cfg.size_mu, cfg.size_sigma));
            double aspect = rng.uniform(0.5, 2.0);
            double w = std::sqrt(area * aspect);
            double h = area / w;
            if (w > bounds.width() || h > bounds.height()) continue;
            double cx = rng.uniform(bounds.min_x + w / 2.0, bounds.max_x - w / 2.0);
            double cy = rng.uniform(bounds.min_y + h / 2.0, bounds.max_y - h / 2.0);
            Envelope e{cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0};
            bool clash = false;
            for (const Envelope& other : placed) {
                if (e.overlaps(other)) {
                    clash = true;
                    break;
                }
            }
            if (clash) continue;
            placed.push_back(e);
            Footprint fp;
            fp.id = i;
            fp.source = Source::REF;
            fp.original_feature_index = i;
            fp.geometry = normalize(rectangle(cx, cy, w, h));
            refresh_footprint(fp);
            scene.ref.footprints.push_back(std::move(fp));
            ok = true;
        }
        if (!ok) {
            raise("density-too-high",
                  "could not place building " + std::to_string(i) + " after " +
                      std::to_string(kMaxPlacementAttempts) + " attempts");
        }
    }

    // seeded thinning: drop exactly round(dropout * n) buildings
    const int n = cfg.n_buildings;
    int k_drop = static_cast<int>(std::llround(cfg.dropout * static_cast<double>(n)));
    k_drop = std::max(0, std::min(n, k_drop));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int j = 0; j < k_drop; ++j) {
        std::size_t pick = static_cast<std::size_t>(j) +
                           static_cast<std::size_t>(rng.uniform_index(static_cast<std::uint64_t>(n - j)));
        std::swap(order[static_cast<std::size_t>(j)], order[pick]);
    }
    std::vector<bool> dropped(static_cast<std::size_t>(n), false);
    for (int j = 0; j < k_drop; ++j) dropped[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = true;

    int next_id = 0;
    for (int ref_id = 0; ref_id < n; ++ref_id) {
        if (dropped[static_cast<std::size_t>(ref_id)]) continue;
        const Footprint& src = scene.ref.footprints[static_cast<std::size_t>(ref_id)];
        Footprint fp;
        fp.id = next_id;
        fp.source = Source::OBD;
        fp.original_feature_index = ref_id;
        bool ok = false;
        for (int attempt = 0; attempt < kMaxJitterAttempts && !ok; ++attempt) {
            try {
                fp.geometry = normalize(perturb(src.geometry, cfg, rng));
                ok = valid_for_analysis(fp.geometry);
            } catch (const Error&) {
                ok = false;  // jitter collapsed the ring; retry with fresh noise
            }
        }
        if (!ok) {
            raise("degenerate-input",
                  "jitter repeatedly produced invalid geometry for building " + std::to_string(ref_id));
        }
        refresh_footprint(fp);
        scene.obd.footprints.push_back(std::move(fp));
        scene.truth.emplace_back(next_id, ref_id);
        ++next_id;
    }
    return scene;
}

}  // namespace fpqa
