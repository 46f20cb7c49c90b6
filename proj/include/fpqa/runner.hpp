#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fpqa/overlap.hpp"
#include "fpqa/registration.hpp"
#include "fpqa/size_stats.hpp"
#include "fpqa/synth.hpp"

namespace fpqa {

struct RunConfig {
    std::string obd_path;
    std::string ref_path;
    std::string boundary_path;  // optional
    std::string utm_zone;       // "31N" token; empty = derive from the reference layer
    double apothem = 500.0;     // metres
    double significance_threshold = 0.51;
    bool significance_filter = true;
    double match_radius = 5.0;   // metres
    double angle_tol = 15.0;     // degrees
    double area_epsilon = 1e-6;  // m²
    bool already_projected = false;
    std::string output_dir = ".";
    std::string city;      // row labels; default derived from file names
    std::string provider;
    Exec exec = Exec::parallel;
};

struct AssessResult {
    OverlapReport overlap;
    AccuracyReport accuracy;
    AffineFit fit;
    SizeStats sizes;
    int n_cells = 0;
    std::vector<std::string> artifacts;  // paths written, in emit order
};

using WarnFn = std::function<void(const std::string&)>;

// Full assessment pipeline; writes every artifact into output_dir and the
// run manifest last. Deterministic: identical inputs and config produce
// byte-identical files.
AssessResult run_assess(const RunConfig& cfg, const WarnFn& warn = {});

// Rebuilds the RunConfig recorded in an assess manifest (output_dir is not
// recorded; set it before re-running).
RunConfig config_from_manifest(const std::string& manifest_path);

// Writes ref.geojson, obd.geojson, truth.csv and manifest.json.
std::vector<std::string> run_synth(const SceneConfig& cfg, const std::string& zone_token,
                                   const std::string& output_dir);

}  // namespace fpqa
