#pragma once

#include <string>

#include "fpqa/geometry.hpp"

namespace fpqa {

enum class Hemisphere { north, south };

// Transverse-Mercator zone parameters. Defaults are WGS84 / UTM.
struct TmZoneSpec {
    double central_meridian = 0.0;  // decimal degrees
    double scale_factor = 0.9996;
    double false_easting = 500000.0;
    double false_northing = 0.0;  // 10000000 on the southern hemisphere
    Hemisphere hemisphere = Hemisphere::north;
    double semi_major_axis = 6378137.0;
    double inverse_flattening = 298.257223563;
    int zone_number = 0;  // 1..60 for standard UTM zones

    std::string token() const;  // "31N" style
};

TmZoneSpec utm_zone_spec(int zone_number, Hemisphere hemisphere);

// Standard zone for a geographic position. Latitude outside (−80, 84)
// raises unsupported-latitude.
TmZoneSpec utm_zone_for(double lon, double lat);

// Parses "31N" / "37s" tokens. Raises usage on malformed input.
TmZoneSpec parse_zone_token(const std::string& token);

// Krüger-series transverse Mercator (6th-order terms, sub-mm inside a zone).
// Coefficients are precomputed per zone, so reuse one Projector per layer.
class Projector {
public:
    explicit Projector(const TmZoneSpec& zone);

    // Raises out-of-zone when the point is ≥10° from the central meridian.
    Point2 forward(double lon, double lat) const;
    void inverse(const Point2& p, double& lon, double& lat) const;

    const TmZoneSpec& zone() const { return zone_; }

private:
    TmZoneSpec zone_;
    double ecc_ = 0.0;          // first eccentricity
    double rectifying_ = 0.0;   // k0 * A (scaled rectifying radius)
    double alpha_[6] = {};
    double beta_[6] = {};
};

// One-shot convenience wrappers.
Point2 forward(double lon, double lat, const TmZoneSpec& zone);
void inverse(const Point2& p, const TmZoneSpec& zone, double& lon, double& lat);

}  // namespace fpqa
