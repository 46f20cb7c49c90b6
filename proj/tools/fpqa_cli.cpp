#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpqa/errors.hpp"
#include "fpqa/hexgrid.hpp"
#include "fpqa/ingest.hpp"
#include "fpqa/report.hpp"
#include "fpqa/runner.hpp"

namespace {

void warn(const std::string& msg) { std::fprintf(stderr, "warning: %s\n", msg.c_str()); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fpqa — building-footprint dataset quality assessment"};
    app.require_subcommand(1);
    // key=value config with a [assess]/[synth]/... section per subcommand;
    // goes before the subcommand name, command-line flags override it
    app.set_config("--config", "", "key=value config file ([assess] etc. sections)");

    // assess
    fpqa::RunConfig run;
    bool no_filter = false;
    bool serial = false;
    std::string from_manifest;
    auto* assess = app.add_subcommand("assess", "compare an OBD layer against a reference layer");
    assess->add_option("--obd", run.obd_path, "OBD GeoJSON file");
    assess->add_option("--ref", run.ref_path, "reference GeoJSON file");
    assess->add_option("--from-manifest", from_manifest,
                       "reproduce a previous run from its manifest.json");
    assess->add_option("--boundary", run.boundary_path, "administrative boundary GeoJSON");
    assess->add_option("--utm-zone", run.utm_zone, "zone token like 31N (default: derived)");
    assess->add_option("--apothem", run.apothem, "hexagon apothem in metres")
        ->check(CLI::PositiveNumber);
    assess->add_option("--significance-threshold", run.significance_threshold,
                       "minimum OBD coverage for a significant pair");
    assess->add_flag("--no-significance-filter", no_filter,
                     "use all pairs for the per-cell mean IoU");
    assess->add_option("--match-radius", run.match_radius, "homologous search radius, metres");
    assess->add_option("--angle-tol", run.angle_tol, "signature tolerance, degrees");
    assess->add_option("--area-epsilon", run.area_epsilon, "minimum overlap area, m²");
    assess->add_flag("--already-projected", run.already_projected,
                     "inputs are metres in the given zone");
    assess->add_option("--city", run.city, "city label for report rows");
    assess->add_option("--provider", run.provider, "provider label for report rows");
    assess->add_option("-o,--output-dir", run.output_dir, "artifact directory")->required();
    assess->add_flag("--serial", serial, "run the serial reference kernels");

    // synth
    fpqa::SceneConfig scene;
    std::string synth_zone;
    std::string synth_out;
    std::vector<double> bounds{0.0, 0.0, 1000.0, 1000.0};
    std::vector<double> translate{0.0, 0.0};
    auto* synth = app.add_subcommand("synth", "generate a synthetic ground-truth scene");
    synth->add_option("--n", scene.n_buildings, "building count")->check(CLI::PositiveNumber);
    synth->add_option("--bounds", bounds, "scene envelope minx,miny,maxx,maxy (metres)")
        ->expected(4)
        ->delimiter(',');
    synth->add_option("--size-mu", scene.size_mu, "mean ln-area");
    synth->add_option("--size-sigma", scene.size_sigma, "std dev of ln-area");
    synth->add_option("--dropout", scene.dropout, "fraction of buildings removed from the OBD copy");
    synth->add_option("--translate", translate, "global OBD shift dx,dy (metres)")
        ->expected(2)
        ->delimiter(',');
    synth->add_option("--rotate", scene.rotation_deg, "per-building rotation, degrees");
    synth->add_option("--jitter", scene.vertex_jitter_sigma, "vertex jitter sigma, metres");
    synth->add_option("--seed", scene.seed, "generator seed");
    synth->add_option("--utm-zone", synth_zone, "zone token for the exported GeoJSON");
    synth->add_option("-o,--output-dir", synth_out, "output directory")->required();

    // grid
    std::vector<double> grid_bounds;
    std::string grid_ref, grid_obd, grid_zone, grid_out;
    double grid_apothem = 500.0;
    auto* gridcmd = app.add_subcommand("grid", "build the hexagonal analysis grid");
    gridcmd->add_option("--ref", grid_ref, "reference GeoJSON (envelope source)");
    gridcmd->add_option("--obd", grid_obd, "OBD GeoJSON (envelope source)");
    gridcmd->add_option("--bounds", grid_bounds, "explicit envelope minx,miny,maxx,maxy (metres)")
        ->expected(4)
        ->delimiter(',');
    gridcmd->add_option("--apothem", grid_apothem, "hexagon apothem in metres")
        ->check(CLI::PositiveNumber);
    gridcmd->add_option("--utm-zone", grid_zone, "zone token like 31N");
    gridcmd->add_option("-o,--output", grid_out, "output GeoJSON path")->required();

    // render
    std::string render_in, render_attr = "mean_iou", render_out;
    auto* render = app.add_subcommand("render", "render a hexbin GeoJSON to SVG");
    render->add_option("--input", render_in, "hexbins.geojson produced by assess")->required();
    render->add_option("--attribute", render_attr, "mean_iou | completeness | pair_count");
    render->add_option("-o,--output", render_out, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*assess) {
            if (!from_manifest.empty()) {
                std::string outdir = run.output_dir;
                run = fpqa::config_from_manifest(from_manifest);
                run.output_dir = outdir;
            } else {
                run.significance_filter = !no_filter;
                run.exec = serial ? fpqa::Exec::serial : fpqa::Exec::parallel;
            }
            if (run.obd_path.empty() || run.ref_path.empty()) {
                fpqa::raise("usage", "assess needs --obd and --ref (or --from-manifest)");
            }
            fpqa::AssessResult result = fpqa::run_assess(run, warn);
            std::printf("assess: %lld OBD vs %lld reference footprints, %d cells\n",
                        result.overlap.total_obd, result.overlap.total_ref, result.n_cells);
            std::printf("  OOP %.4f%%  ORP %.4f%%  avg IoU %s\n", result.overlap.oop_pct,
                        result.overlap.orp_pct,
                        result.overlap.avg_iou_defined
                            ? fpqa::format_double(result.overlap.avg_iou).c_str()
                            : "n/a");
            for (const std::string& path : result.artifacts) {
                std::printf("  wrote %s\n", path.c_str());
            }
        } else if (*synth) {
            scene.area_bounds = {bounds[0], bounds[1], bounds[2], bounds[3]};
            scene.translate_x = translate[0];
            scene.translate_y = translate[1];
            for (const std::string& path : fpqa::run_synth(scene, synth_zone, synth_out)) {
                std::printf("wrote %s\n", path.c_str());
            }
        } else if (*gridcmd) {
            fpqa::TmZoneSpec zone;
            fpqa::Envelope env;
            if (!grid_ref.empty() || !grid_obd.empty()) {
                const std::string& primary = grid_ref.empty() ? grid_obd : grid_ref;
                zone = grid_zone.empty() ? fpqa::derive_zone_from_file(primary)
                                         : fpqa::parse_zone_token(grid_zone);
                bool have = false;
                for (const std::string& path : {grid_ref, grid_obd}) {
                    if (path.empty()) continue;
                    fpqa::Layer layer = fpqa::read_layer(
                        path, path == grid_ref ? fpqa::Source::REF : fpqa::Source::OBD, zone);
                    fpqa::Envelope e = fpqa::layer_envelope(layer);
                    if (have) {
                        env.expand(e);
                    } else {
                        env = e;
                        have = true;
                    }
                }
            } else if (grid_bounds.size() == 4) {
                if (grid_zone.empty()) {
                    fpqa::raise("usage", "--bounds needs --utm-zone for the GeoJSON export");
                }
                zone = fpqa::parse_zone_token(grid_zone);
                env = {grid_bounds[0], grid_bounds[1], grid_bounds[2], grid_bounds[3]};
            } else {
                fpqa::raise("usage", "grid needs --ref/--obd files or explicit --bounds");
            }
            fpqa::HexGrid grid = fpqa::build_grid(env, grid_apothem);
            fpqa::write_file(grid_out, fpqa::grid_to_geojson(grid, zone));
            std::printf("wrote %s (%zu cells)\n", grid_out.c_str(), grid.cells().size());
        } else if (*render) {
            fpqa::HexGrid grid = fpqa::grid_from_geojson(fpqa::read_file(render_in));
            fpqa::write_file(render_out, fpqa::render_hexbin_svg(grid, render_attr));
            std::printf("wrote %s\n", render_out.c_str());
        }
    } catch (const fpqa::Error& e) {
        std::fprintf(stderr, "error: %s: %s\n", e.category().c_str(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: internal: %s\n", e.what());
        return 2;
    }
    return 0;
}
