#include "fpqa/projection.hpp"

#include <cctype>
#include <cmath>

#include "fpqa/errors.hpp"

namespace fpqa {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

}  // namespace

std::string TmZoneSpec::token() const {
    std::string h = hemisphere == Hemisphere::north ? "N" : "S";
    if (zone_number >= 1 && zone_number <= 60) return std::to_string(zone_number) + h;
    return "TM@" + std::to_string(central_meridian) + h;
}

TmZoneSpec utm_zone_spec(int zone_number, Hemisphere hemisphere) {
    if (zone_number < 1 || zone_number > 60) {
        raise("usage", "UTM zone number must be in 1..60");
    }
    TmZoneSpec z;
    z.zone_number = zone_number;
    z.central_meridian = -183.0 + 6.0 * zone_number;
    z.hemisphere = hemisphere;
    z.false_northing = hemisphere == Hemisphere::south ? 10000000.0 : 0.0;
    return z;
}

TmZoneSpec utm_zone_for(double lon, double lat) {
    if (!(lat > -80.0 && lat < 84.0)) {
        raise("unsupported-latitude", "UTM is defined for latitudes in (-80, 84)");
    }
    if (lon < -180.0 || lon >= 180.0) {
        raise("usage", "longitude must be in [-180, 180)");
    }
    int zone = static_cast<int>(std::floor((lon + 180.0) / 6.0)) + 1;
    zone = std::min(std::max(zone, 1), 60);
    return utm_zone_spec(zone, lat < 0.0 ? Hemisphere::south : Hemisphere::north);
}

TmZoneSpec parse_zone_token(const std::string& token) {
    if (token.size() < 2) raise("usage", "zone token must look like 31N or 37S");
    char hemi = static_cast<char>(std::toupper(static_cast<unsigned char>(token.back())));
    if (hemi != 'N' && hemi != 'S') raise("usage", "zone token must end in N or S");
    int zone = 0;
    for (std::size_t i = 0; i + 1 < token.size(); ++i) {
        char c = token[i];
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            raise("usage", "zone token must be digits followed by N or S");
        }
        zone = zone * 10 + (c - '0');
    }
    return utm_zone_spec(zone, hemi == 'N' ? Hemisphere::north : Hemisphere::south);
}

Projector::Projector(const TmZoneSpec& zone) : zone_(zone) {
    if (!(zone.scale_factor > 0.9 && zone.scale_factor < 1.1)) {
        raise("usage", "scale factor out of range");
    }
    double f = 1.0 / zone.inverse_flattening;
    double n = f / (2.0 - f);
    ecc_ = std::sqrt(f * (2.0 - f));

    double n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n;
    double big_a = zone.semi_major_axis / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);
    rectifying_ = zone.scale_factor * big_a;

    alpha_[0] = n / 2.0 - 2.0 * n2 / 3.0 + 5.0 * n3 / 16.0 + 41.0 * n4 / 180.0 -
                127.0 * n5 / 288.0 + 7891.0 * n6 / 37800.0;
    alpha_[1] = 13.0 * n2 / 48.0 - 3.0 * n3 / 5.0 + 557.0 * n4 / 1440.0 + 281.0 * n5 / 630.0 -
                1983433.0 * n6 / 1935360.0;
    alpha_[2] = 61.0 * n3 / 240.0 - 103.0 * n4 / 140.0 + 15061.0 * n5 / 26880.0 +
                167603.0 * n6 / 181440.0;
    alpha_[3] = 49561.0 * n4 / 161280.0 - 179.0 * n5 / 168.0 + 6601661.0 * n6 / 7257600.0;
    alpha_[4] = 34729.0 * n5 / 80640.0 - 3418889.0 * n6 / 1995840.0;
    alpha_[5] = 212378941.0 * n6 / 319334400.0;

    beta_[0] = n / 2.0 - 2.0 * n2 / 3.0 + 37.0 * n3 / 96.0 - n4 / 360.0 - 81.0 * n5 / 512.0 +
               96199.0 * n6 / 604800.0;
    beta_[1] = n2 / 48.0 + n3 / 15.0 - 437.0 * n4 / 1440.0 + 46.0 * n5 / 105.0 -
               1118711.0 * n6 / 3870720.0;
    beta_[2] = 17.0 * n3 / 480.0 - 37.0 * n4 / 840.0 - 209.0 * n5 / 4480.0 +
               5569.0 * n6 / 90720.0;
    beta_[3] = 4397.0 * n4 / 161280.0 - 11.0 * n5 / 504.0 - 830251.0 * n6 / 7257600.0;
    beta_[4] = 4583.0 * n5 / 161280.0 - 108847.0 * n6 / 3991680.0;
    beta_[5] = 20648693.0 * n6 / 638668800.0;
}

Point2 Projector::forward(double lon, double lat) const {
    double dlon = lon - zone_.central_meridian;
    while (dlon > 180.0) dlon -= 360.0;
    while (dlon < -180.0) dlon += 360.0;
    if (std::abs(dlon) >= 10.0) {
        raise("out-of-zone", "point is " + std::to_string(dlon) + " deg from the central meridian");
    }
    double phi = lat * kDegToRad;
    double lam = dlon * kDegToRad;

    double sin_phi = std::sin(phi);
    double tau = std::tan(phi);
    double sigma = std::sinh(ecc_ * std::atanh(ecc_ * sin_phi));
    double tau_p = tau * std::sqrt(1.0 + sigma * sigma) - sigma * std::sqrt(1.0 + tau * tau);

    double cos_lam = std::cos(lam);
    double xi_p = std::atan2(tau_p, cos_lam);
    double eta_p = std::asinh(std::sin(lam) / std::hypot(tau_p, cos_lam));

    double xi = xi_p;
    double eta = eta_p;
    for (int j = 1; j <= 6; ++j) {
        xi += alpha_[j - 1] * std::sin(2.0 * j * xi_p) * std::cosh(2.0 * j * eta_p);
        eta += alpha_[j - 1] * std::cos(2.0 * j * xi_p) * std::sinh(2.0 * j * eta_p);
    }
    return {zone_.false_easting + rectifying_ * eta, zone_.false_northing + rectifying_ * xi};
}

void Projector::inverse(const Point2& p, double& lon, double& lat) const {
    double eta = (p.x - zone_.false_easting) / rectifying_;
    double xi = (p.y - zone_.false_northing) / rectifying_;

    double xi_p = xi;
    double eta_p = eta;
    for (int j = 1; j <= 6; ++j) {
        xi_p -= beta_[j - 1] * std::sin(2.0 * j * xi) * std::cosh(2.0 * j * eta);
        eta_p -= beta_[j - 1] * std::cos(2.0 * j * xi) * std::sinh(2.0 * j * eta);
    }

    double s = std::sinh(eta_p);
    double cos_xi = std::cos(xi_p);
    double tau_p = std::sin(xi_p) / std::hypot(s, cos_xi);
    double lam = std::atan2(s, cos_xi);

    // Newton on tau' (tau) = tau sqrt(1+sigma²) − sigma sqrt(1+tau²)
    double e2 = ecc_ * ecc_;
    double tau = tau_p / (1.0 - e2);
    for (int it = 0; it < 8; ++it) {
        double sigma = std::sinh(ecc_ * std::atanh(ecc_ * tau / std::sqrt(1.0 + tau * tau)));
        double f = tau * std::sqrt(1.0 + sigma * sigma) - sigma * std::sqrt(1.0 + tau * tau) - tau_p;
        double df = (std::sqrt((1.0 + sigma * sigma) * (1.0 + tau * tau)) - sigma * tau) *
                    (1.0 - e2) * std::sqrt(1.0 + tau * tau) / (1.0 + (1.0 - e2) * tau * tau);
        double step = f / df;
        tau -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(tau))) break;
    }

    lat = std::atan(tau) * kRadToDeg;
    lon = zone_.central_meridian + lam * kRadToDeg;
}

Point2 forward(double lon, double lat, const TmZoneSpec& zone) {
    return Projector(zone).forward(lon, lat);
}

void inverse(const Point2& p, const TmZoneSpec& zone, double& lon, double& lat) {
    Projector(zone).inverse(p, lon, lat);
}

}  // namespace fpqa
