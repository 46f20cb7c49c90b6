#include "fpqa/runner.hpp"

#include <filesystem>

#include <json.hpp>

#include "fpqa/errors.hpp"
#include "fpqa/hexgrid.hpp"
#include "fpqa/ingest.hpp"
#include "fpqa/report.hpp"
#include "fpqa/similarity.hpp"

namespace fpqa {

namespace {

std::string stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void warn_if(const WarnFn& warn, const std::string& msg) {
    if (warn) warn(msg);
}

std::map<std::string, std::string> config_map(const RunConfig& cfg, const TmZoneSpec& zone,
                                              const std::string& city,
                                              const std::string& provider) {
    return {
        {"utm_zone", zone.token()},
        {"apothem", format_double(cfg.apothem)},
        {"significance_threshold", format_double(cfg.significance_threshold)},
        {"significance_filter", cfg.significance_filter ? "true" : "false"},
        {"match_radius", format_double(cfg.match_radius)},
        {"angle_tol", format_double(cfg.angle_tol)},
        {"area_epsilon", format_double(cfg.area_epsilon)},
        {"already_projected", cfg.already_projected ? "true" : "false"},
        {"city", city},
        {"provider", provider},
        {"exec", cfg.exec == Exec::parallel ? "parallel" : "serial"},
    };
}

}  // namespace

RunConfig config_from_manifest(const std::string& manifest_path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        raise("io", manifest_path + ": " + e.what());
    }
    if (doc.value("command", "") != "assess") {
        raise("usage", manifest_path + ": not an assess manifest");
    }
    const nlohmann::json& inputs = doc.at("inputs");
    const nlohmann::json& config = doc.at("config");
    RunConfig cfg;
    cfg.obd_path = inputs.at("obd_path").get<std::string>();
    cfg.ref_path = inputs.at("ref_path").get<std::string>();
    cfg.boundary_path = inputs.value("boundary_path", "");
    cfg.utm_zone = config.value("utm_zone", "");
    cfg.apothem = std::stod(config.value("apothem", "500"));
    cfg.significance_threshold = std::stod(config.value("significance_threshold", "0.51"));
    cfg.significance_filter = config.value("significance_filter", "true") == "true";
    cfg.match_radius = std::stod(config.value("match_radius", "5"));
    cfg.angle_tol = std::stod(config.value("angle_tol", "15"));
    cfg.area_epsilon = std::stod(config.value("area_epsilon", "1e-06"));
    cfg.already_projected = config.value("already_projected", "false") == "true";
    cfg.city = config.value("city", "");
    cfg.provider = config.value("provider", "");
    cfg.exec = config.value("exec", "parallel") == "serial" ? Exec::serial : Exec::parallel;
    return cfg;
}

AssessResult run_assess(const RunConfig& cfg, const WarnFn& warn) {
    if (cfg.obd_path.empty() || cfg.ref_path.empty()) {
        raise("usage", "assess needs --obd and --ref input files");
    }
    TmZoneSpec zone;
    if (!cfg.utm_zone.empty()) {
        zone = parse_zone_token(cfg.utm_zone);
    } else if (cfg.already_projected) {
        raise("usage", "--already-projected input requires an explicit --utm-zone");
    } else {
        zone = derive_zone_from_file(cfg.ref_path);
    }

    std::string city = cfg.city.empty() ? stem(cfg.ref_path) : cfg.city;
    std::string provider = cfg.provider.empty() ? stem(cfg.obd_path) : cfg.provider;

    Layer ref = read_layer(cfg.ref_path, Source::REF, zone, cfg.already_projected);
    Layer obd = read_layer(cfg.obd_path, Source::OBD, zone, cfg.already_projected);
    if (ref.dropped_count > 0 || obd.dropped_count > 0) {
        warn_if(warn, "dropped invalid features: ref=" + std::to_string(ref.dropped_count) +
                          " obd=" + std::to_string(obd.dropped_count));
    }
    if (ref.skipped_count > 0 || obd.skipped_count > 0) {
        warn_if(warn, "skipped non-polygon features: ref=" + std::to_string(ref.skipped_count) +
                          " obd=" + std::to_string(obd.skipped_count));
    }

    if (!cfg.boundary_path.empty()) {
        std::vector<Polygon> boundary =
            read_boundary_polygons(cfg.boundary_path, zone, cfg.already_projected);
        ref = clip_to_boundary(ref, boundary);
        obd = clip_to_boundary(obd, boundary);
        if (ref.footprints.empty() || obd.footprints.empty()) {
            warn_if(warn, "a layer is empty after boundary clipping");
        }
    }
    if (ref.footprints.empty() || obd.footprints.empty()) {
        raise("empty-layer", "no footprints to assess");
    }

    AssessResult result;

    std::vector<OverlapPair> pairs = find_pairs(obd, ref, cfg.area_epsilon, cfg.exec);
    result.overlap = overlap_report(pairs, static_cast<long long>(obd.footprints.size()),
                                    static_cast<long long>(ref.footprints.size()));

    std::vector<OverlapPair> scored_pairs =
        cfg.significance_filter ? filter_significant(pairs, cfg.significance_threshold) : pairs;

    Envelope env = layer_envelope(ref);
    env.expand(layer_envelope(obd));
    HexGrid grid = build_grid(env, cfg.apothem);
    result.n_cells = static_cast<int>(grid.cells().size());

    mean_iou_per_cell(scored_pairs, obd, ref, grid, cfg.exec);
    completeness_per_cell(obd, ref, grid, cfg.exec);

    std::array<Point2, 5> targets = select_control_targets(obd);
    std::vector<MatchedVertexPair> matches =
        match_homologous(obd, ref, targets, {cfg.match_radius, cfg.angle_tol});
    if (matches.size() < 5) {
        warn_if(warn, "only " + std::to_string(matches.size()) +
                          " of 5 control targets matched; proceeding");
    }
    result.fit = fit_affine(matches);
    result.accuracy = accuracy_report(matches);

    std::vector<double> obd_areas;
    obd_areas.reserve(obd.footprints.size());
    for (const Footprint& fp : obd.footprints) obd_areas.push_back(fp.area);
    result.sizes = size_stats(obd_areas);

    // emit artifacts
    struct Artifact {
        std::string name;
        std::string content;
    };
    std::vector<Artifact> artifacts = {
        {"overlap_report.csv", overlap_report_csv(city, provider, result.overlap)},
        {"accuracy_report.csv", accuracy_report_csv(provider, city, result.accuracy, result.fit)},
        {"size_stats.csv", size_stats_csv(city, result.sizes)},
        {"size_histogram.csv", size_histogram_csv(result.sizes)},
        {"overlap_histogram.csv", overlap_histogram_csv(result.overlap)},
        {"hexbins.geojson", grid_to_geojson(grid, zone)},
        {"hexbin_iou.svg", render_hexbin_svg(grid, "mean_iou")},
        {"hexbin_completeness.svg", render_hexbin_svg(grid, "completeness")},
    };

    std::map<std::string, std::string> output_hashes;
    for (const Artifact& a : artifacts) {
        std::string path = join_path(cfg.output_dir, a.name);
        write_file(path, a.content);
        output_hashes[a.name] = content_hash(a.content);
        result.artifacts.push_back(path);
    }

    std::map<std::string, std::string> inputs = {
        {"obd_path", cfg.obd_path},
        {"obd_hash", content_hash(read_file(cfg.obd_path))},
        {"ref_path", cfg.ref_path},
        {"ref_hash", content_hash(read_file(cfg.ref_path))},
    };
    if (!cfg.boundary_path.empty()) {
        inputs["boundary_path"] = cfg.boundary_path;
        inputs["boundary_hash"] = content_hash(read_file(cfg.boundary_path));
    }
    std::string manifest =
        manifest_json("assess", inputs, config_map(cfg, zone, city, provider), output_hashes);
    std::string manifest_path = join_path(cfg.output_dir, "manifest.json");
    write_file(manifest_path, manifest);
    result.artifacts.push_back(manifest_path);
    return result;
}

namespace {

// Scene coordinates are plain metres; exporting to GeoJSON interprets them
// as zone coordinates. Shift scenes that fall outside the plausible UTM
// window so the inverse projection lands inside the zone. A pure
// translation, so every metric computed on the re-read layers is unchanged.
void anchor_into_zone(Scene& scene, const TmZoneSpec& zone) {
    if (scene.ref.footprints.empty()) return;
    Envelope env = layer_envelope(scene.ref);
    if (!scene.obd.footprints.empty()) env.expand(layer_envelope(scene.obd));
    bool easting_ok = env.min_x >= 200000.0 && env.max_x <= 800000.0;
    double north_lo = zone.hemisphere == Hemisphere::south ? 1500000.0 : 100000.0;
    double north_hi = zone.hemisphere == Hemisphere::south ? 9900000.0 : 8000000.0;
    bool northing_ok = env.min_y >= north_lo && env.max_y <= north_hi;
    if (easting_ok && northing_ok) return;

    double dx = 450000.0 - env.min_x;
    double dy = (zone.hemisphere == Hemisphere::south ? 9000000.0 : 4000000.0) - env.min_y;
    for (Layer* layer : {&scene.ref, &scene.obd}) {
        for (Footprint& fp : layer->footprints) {
            for (Point2& p : fp.geometry.exterior) {
                p.x += dx;
                p.y += dy;
            }
            for (Ring& h : fp.geometry.holes) {
                for (Point2& p : h) {
                    p.x += dx;
                    p.y += dy;
                }
            }
            refresh_footprint(fp);
        }
    }
}

}  // namespace

std::vector<std::string> run_synth(const SceneConfig& cfg, const std::string& zone_token,
                                   const std::string& output_dir) {
    TmZoneSpec zone =
        zone_token.empty() ? utm_zone_spec(31, Hemisphere::north) : parse_zone_token(zone_token);
    Scene scene = generate_scene(cfg, zone);
    anchor_into_zone(scene, zone);

    struct Artifact {
        std::string name;
        std::string content;
    };
    std::vector<Artifact> artifacts = {
        {"ref.geojson", layer_to_geojson(scene.ref)},
        {"obd.geojson", layer_to_geojson(scene.obd)},
        {"truth.csv", truth_csv(scene.truth)},
    };

    std::vector<std::string> written;
    std::map<std::string, std::string> output_hashes;
    for (const Artifact& a : artifacts) {
        std::string path = (std::filesystem::path(output_dir) / a.name).string();
        write_file(path, a.content);
        output_hashes[a.name] = content_hash(a.content);
        written.push_back(path);
    }

    std::map<std::string, std::string> config = {
        {"n_buildings", std::to_string(cfg.n_buildings)},
        {"bounds", format_double(cfg.area_bounds.min_x) + "," + format_double(cfg.area_bounds.min_y) +
                       "," + format_double(cfg.area_bounds.max_x) + "," +
                       format_double(cfg.area_bounds.max_y)},
        {"size_mu", format_double(cfg.size_mu)},
        {"size_sigma", format_double(cfg.size_sigma)},
        {"dropout", format_double(cfg.dropout)},
        {"translate", format_double(cfg.translate_x) + "," + format_double(cfg.translate_y)},
        {"rotation_deg", format_double(cfg.rotation_deg)},
        {"vertex_jitter_sigma", format_double(cfg.vertex_jitter_sigma)},
        {"seed", std::to_string(cfg.seed)},
        {"utm_zone", zone.token()},
    };
    std::string manifest = manifest_json("synth", {}, config, output_hashes);
    std::string manifest_path = (std::filesystem::path(output_dir) / "manifest.json").string();
    write_file(manifest_path, manifest);
    written.push_back(manifest_path);
    return written;
}

}  // namespace fpqa
