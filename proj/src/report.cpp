#include "fpqa/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fpqa/errors.hpp"

namespace fpqa {

namespace {

using nlohmann::json;

const char* kToolVersion = "0.1.0";

std::string pct_label(double rank) {
    double rounded = std::round(rank);
    if (rounded == rank) {
        long long r = static_cast<long long>(rounded);
        long long mod100 = r % 100;
        long long mod10 = r % 10;
        const char* suffix = "th";
        if (mod100 < 11 || mod100 > 13) {
            if (mod10 == 1) suffix = "st";
            else if (mod10 == 2) suffix = "nd";
            else if (mod10 == 3) suffix = "rd";
        }
        return std::to_string(r) + suffix;
    }
    return format_double(rank) + "th";
}

std::string hex_byte(std::uint8_t b) {
    static const char* digits = "0123456789abcdef";
    return {digits[b >> 4], digits[b & 0xf]};
}

// viridis anchors, dark to light
constexpr std::uint8_t kRamp[10][3] = {
    {0x44, 0x01, 0x54}, {0x48, 0x28, 0x78}, {0x3e, 0x49, 0x89}, {0x31, 0x68, 0x8e},
    {0x26, 0x82, 0x8e}, {0x1f, 0x9e, 0x89}, {0x35, 0xb7, 0x79}, {0x6d, 0xcd, 0x59},
    {0xb4, 0xde, 0x2c}, {0xfd, 0xe7, 0x25},
};

std::string svg_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

std::string overlap_report_csv(const std::string& city, const std::string& provider,
                               const OverlapReport& r) {
    std::ostringstream out;
    out << "City,Provider,Total_OBD,Total_Ref,OOP,ORP,NOOP,NORP,OMO,RMO,Avg_IoU\n";
    out << city << ',' << provider << ',' << r.total_obd << ',' << r.total_ref << ','
        << format_double(r.oop_pct) << ',' << format_double(r.orp_pct) << ','
        << format_double(r.noop_pct) << ',' << format_double(r.norp_pct) << ','
        << format_double(r.omo_pct) << ',' << format_double(r.rmo_pct) << ','
        << (r.avg_iou_defined ? format_double(r.avg_iou) : std::string()) << '\n';
    return out.str();
}

std::string accuracy_report_csv(const std::string& provider, const std::string& city,
                                const AccuracyReport& r, const AffineFit& fit) {
    std::ostringstream out;
    out << "Provider,City,Angle_deg,Brg1_deg,Brg2_deg,Dist_m,N_matches,Fit_error_m\n";
    out << provider << ',' << city << ',' << format_double(r.mean_angle) << ','
        << format_double(r.mean_brg1) << ',' << format_double(r.mean_brg2) << ','
        << format_double(r.mean_dist) << ',' << r.n_matches << ','
        << format_double(fit.fit_error) << '\n';
    return out.str();
}

std::string size_stats_csv(const std::string& city, const SizeStats& stats) {
    std::ostringstream out;
    out << "Percentiles," << city << '\n';
    for (const auto& [rank, value] : stats.percentiles) {
        out << pct_label(rank) << ',' << format_double(value) << '\n';
    }
    return out.str();
}

std::string size_histogram_csv(const SizeStats& stats) {
    std::ostringstream out;
    out << "bin_low,bin_high,count,fitted_density_at_center\n";
    std::vector<double> centers;
    centers.reserve(stats.histogram.size());
    for (const HistogramBin& b : stats.histogram) centers.push_back((b.low + b.high) / 2.0);
    std::vector<double> density;
    if (stats.sigma > 0.0) {
        density = pdf_curve(stats.mu, stats.sigma, centers);
    } else {
        density.assign(centers.size(), 0.0);
    }
    for (std::size_t i = 0; i < stats.histogram.size(); ++i) {
        const HistogramBin& b = stats.histogram[i];
        out << format_double(b.low) << ',' << format_double(b.high) << ',' << b.count << ','
            << format_double(density[i]) << '\n';
    }
    return out.str();
}

std::string overlap_histogram_csv(const OverlapReport& r) {
    std::ostringstream out;
    out << "Layer,Overlapping,Non_Overlapping\n";
    out << "OBD," << r.overlapping_obd << ',' << (r.total_obd - r.overlapping_obd) << '\n';
    out << "REF," << r.overlapping_ref << ',' << (r.total_ref - r.overlapping_ref) << '\n';
    return out.str();
}

std::string truth_csv(const std::vector<std::pair<int, int>>& truth) {
    std::ostringstream out;
    out << "obd_id,ref_id\n";
    for (const auto& [obd_id, ref_id] : truth) {
        out << obd_id << ',' << ref_id << '\n';
    }
    return out.str();
}

std::string grid_to_geojson(const HexGrid& grid, const TmZoneSpec& zone) {
    Projector proj(zone);
    json features = json::array();
    for (const HexCell& cell : grid.cells()) {
        json ring = json::array();
        for (const Point2& p : cell.geometry.exterior) {
            double lon = 0.0, lat = 0.0;
            proj.inverse(p, lon, lat);
            ring.push_back(json::array({lon, lat}));
        }
        json props = {
            {"cell_id", cell.cell_id},
            {"pair_count", cell.stats.pair_count},
            {"obd_area", cell.stats.obd_area},
            {"ref_area", cell.stats.ref_area},
        };
        props["mean_iou"] = cell.stats.mean_iou ? json(*cell.stats.mean_iou) : json(nullptr);
        props["completeness"] =
            cell.stats.completeness ? json(*cell.stats.completeness) : json(nullptr);
        json feature = {
            {"type", "Feature"},
            {"properties", props},
            {"geometry", {{"type", "Polygon"}, {"coordinates", json::array({ring})}}},
        };
        features.push_back(std::move(feature));
    }
    json doc = {
        {"type", "FeatureCollection"},
        {"zone", zone.token()},
        {"apothem", grid.apothem()},
        {"features", features},
    };
    return doc.dump(2) + "\n";
}

HexGrid grid_from_geojson(const std::string& text, TmZoneSpec* zone_out) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        raise("io", std::string("hexbin GeoJSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features")) {
        raise("io", "hexbin GeoJSON: not a FeatureCollection");
    }
    if (!doc.contains("zone") || !doc.contains("apothem")) {
        raise("io", "hexbin GeoJSON: missing zone/apothem members");
    }
    TmZoneSpec zone = parse_zone_token(doc["zone"].get<std::string>());
    if (zone_out != nullptr) *zone_out = zone;
    double apothem = doc["apothem"].get<double>();
    Projector proj(zone);

    std::vector<HexCell> cells;
    std::vector<std::pair<int, int>> coords;  // lattice unknown; synthesize unique keys
    int fallback = 0;
    for (const json& feature : doc["features"]) {
        const json& geom = feature.at("geometry");
        if (geom.value("type", "") != "Polygon") continue;
        HexCell cell;
        cell.apothem = apothem;
        const json& props = feature.value("properties", json::object());
        cell.cell_id = props.value("cell_id", fallback);
        cell.stats.pair_count = props.value("pair_count", 0);
        cell.stats.obd_area = props.value("obd_area", 0.0);
        cell.stats.ref_area = props.value("ref_area", 0.0);
        if (props.contains("mean_iou") && props["mean_iou"].is_number()) {
            cell.stats.mean_iou = props["mean_iou"].get<double>();
        }
        if (props.contains("completeness") && props["completeness"].is_number()) {
            cell.stats.completeness = props["completeness"].get<double>();
        }
        Ring ring;
        for (const json& pos : geom.at("coordinates").at(0)) {
            ring.push_back(proj.forward(pos.at(0).get<double>(), pos.at(1).get<double>()));
        }
        cell.geometry.exterior = std::move(ring);
        double cx = 0.0, cy = 0.0;
        std::size_t m = cell.geometry.exterior.size() - 1;
        for (std::size_t i = 0; i < m; ++i) {
            cx += cell.geometry.exterior[i].x;
            cy += cell.geometry.exterior[i].y;
        }
        cell.center = {cx / static_cast<double>(m), cy / static_cast<double>(m)};
        cells.push_back(std::move(cell));
        coords.emplace_back(0, fallback);
        ++fallback;
    }
    if (cells.empty()) raise("io", "hexbin GeoJSON: no polygon features");
    Point2 origin = cells.front().center;
    return HexGrid(apothem, origin, std::move(cells), std::move(coords));
}

std::array<std::uint8_t, 3> ramp_color(double t) {
    t = std::min(1.0, std::max(0.0, t));
    double pos = t * 9.0;
    int lo = static_cast<int>(std::floor(pos));
    int hi = std::min(lo + 1, 9);
    double frac = pos - static_cast<double>(lo);
    std::array<std::uint8_t, 3> out{};
    for (int c = 0; c < 3; ++c) {
        double v = (1.0 - frac) * kRamp[lo][c] + frac * kRamp[hi][c];
        out[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(std::lround(v));
    }
    return out;
}

std::string render_hexbin_svg(const HexGrid& grid, const std::string& attribute) {
    if (grid.cells().empty()) raise("usage", "cannot render an empty grid");
    enum class Attr { iou, completeness, pairs };
    Attr attr;
    if (attribute == "mean_iou") attr = Attr::iou;
    else if (attribute == "completeness") attr = Attr::completeness;
    else if (attribute == "pair_count") attr = Attr::pairs;
    else raise("usage", "unknown hexbin attribute: " + attribute);

    auto value_of = [&](const HexCell& c) -> std::optional<double> {
        switch (attr) {
            case Attr::iou: return c.stats.mean_iou;
            case Attr::completeness: return c.stats.completeness;
            case Attr::pairs: return static_cast<double>(c.stats.pair_count);
        }
        return std::nullopt;
    };

    // domain: [0,1] for IoU, [0,max] otherwise
    double lo = 0.0, hi = 1.0;
    bool any_defined = false;
    if (attr != Attr::iou) {
        hi = 0.0;
        for (const HexCell& c : grid.cells()) {
            if (auto v = value_of(c)) {
                hi = std::max(hi, *v);
                any_defined = true;
            }
        }
        if (hi <= 0.0) hi = 1.0;
    } else {
        for (const HexCell& c : grid.cells()) {
            if (value_of(c)) any_defined = true;
        }
    }

    Envelope env = envelope_of(grid.cells().front().geometry);
    for (const HexCell& c : grid.cells()) env.expand(envelope_of(c.geometry));

    const double legend_w = 140.0;
    const double width = 800.0;
    const double draw_w = width - legend_w;
    double scale = env.width() > 0.0 ? draw_w / env.width() : 1.0;
    double height = std::max(env.height() * scale, 60.0);

    auto to_px = [&](const Point2& p) -> Point2 {
        return {(p.x - env.min_x) * scale, height - (p.y - env.min_y) * scale};
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(width)
        << "\" height=\"" << svg_num(height) << "\" viewBox=\"0 0 " << svg_num(width) << ' '
        << svg_num(height) << "\">\n";
    svg << "  <defs>\n"
        << "    <pattern id=\"nodata\" width=\"6\" height=\"6\" "
           "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n"
        << "      <rect width=\"6\" height=\"6\" fill=\"#d9d9d9\"/>\n"
        << "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#9e9e9e\" "
           "stroke-width=\"2\"/>\n"
        << "    </pattern>\n"
        << "  </defs>\n";

    for (const HexCell& c : grid.cells()) {
        std::string fill;
        if (auto v = value_of(c)) {
            double t = hi > lo ? (*v - lo) / (hi - lo) : 0.0;
            auto rgb = ramp_color(t);
            fill = "#" + hex_byte(rgb[0]) + hex_byte(rgb[1]) + hex_byte(rgb[2]);
        } else {
            fill = "url(#nodata)";
        }
        svg << "  <path data-cell=\"" << c.cell_id << "\" fill=\"" << fill
            << "\" stroke=\"#ffffff\" stroke-width=\"0.4\" d=\"";
        const Ring& ring = c.geometry.exterior;
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            Point2 px = to_px(ring[i]);
            svg << (i == 0 ? 'M' : 'L') << svg_num(px.x) << ',' << svg_num(px.y);
        }
        svg << "Z\"/>\n";
    }

    // legend
    double lx = draw_w + 24.0;
    double ly = 20.0;
    double lh = std::max(height - 60.0, 40.0);
    if (any_defined) {
        const int steps = 64;
        for (int i = 0; i < steps; ++i) {
            double t0 = static_cast<double>(i) / steps;
            auto rgb = ramp_color(1.0 - t0);  // top = max
            svg << "  <rect x=\"" << svg_num(lx) << "\" y=\"" << svg_num(ly + lh * t0)
                << "\" width=\"16\" height=\"" << svg_num(lh / steps + 0.5) << "\" fill=\"#"
                << hex_byte(rgb[0]) << hex_byte(rgb[1]) << hex_byte(rgb[2]) << "\"/>\n";
        }
        auto label = [&](double frac, double value) {
            svg << "  <text x=\"" << svg_num(lx + 22.0) << "\" y=\"" << svg_num(ly + lh * frac + 4.0)
                << "\" font-family=\"sans-serif\" font-size=\"12\">" << format_double(value)
                << "</text>\n";
        };
        label(0.0, hi);
        label(0.5, (lo + hi) / 2.0);
        label(1.0, lo);
        svg << "  <text x=\"" << svg_num(lx) << "\" y=\"" << svg_num(ly - 6.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << attribute << "</text>\n";
    } else {
        svg << "  <rect x=\"" << svg_num(lx) << "\" y=\"" << svg_num(ly)
            << "\" width=\"16\" height=\"" << svg_num(lh) << "\" fill=\"url(#nodata)\"/>\n";
        svg << "  <text x=\"" << svg_num(lx + 22.0) << "\" y=\"" << svg_num(ly + lh / 2.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\">no data</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string manifest_json(const std::string& command,
                          const std::map<std::string, std::string>& inputs,
                          const std::map<std::string, std::string>& config,
                          const std::map<std::string, std::string>& output_hashes) {
    json doc = {
        {"tool", "fpqa"},
        {"version", kToolVersion},
        {"command", command},
        {"inputs", inputs},
        {"config", config},
        {"outputs", output_hashes},
    };
    return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise("io", "cannot write " + path);
    out << content;
    if (!out) raise("io", "failed writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise("io", "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace fpqa
