#pragma once

#include <utility>
#include <vector>

namespace fpqa {

struct HistogramBin {
    double low = 0.0;
    double high = 0.0;
    long long count = 0;
};

struct SizeStats {
    std::vector<std::pair<double, double>> percentiles;  // (rank, m²), rank order
    double mu = 0.0;     // mean of ln(area)
    double sigma = 0.0;  // population std dev of ln(area)
    long long n = 0;
    std::vector<HistogramBin> histogram;  // over ln(area)
};

inline const std::vector<double> kDefaultPercentileRanks = {10, 25, 50, 75, 90};

// Linear interpolation between order statistics at position (n−1)·rank/100.
std::vector<std::pair<double, double>> percentiles(std::vector<double> values,
                                                   const std::vector<double>& ranks);

// (mu, sigma) of the natural-log values; population standard deviation.
// Raises domain for non-positive areas, insufficient-sample for n < 2.
std::pair<double, double> log_normal_fit(const std::vector<double>& areas);

// Equal-width bins over [min, max]; the last bin includes its right edge.
// A zero-width range is widened to ±0.5 around the value.
std::vector<HistogramBin> histogram(const std::vector<double>& values, int bins);

// Normal density at each x. Raises degenerate-density for sigma ≤ 0.
std::vector<double> pdf_curve(double mu, double sigma, const std::vector<double>& xs);

SizeStats size_stats(const std::vector<double>& areas, int bins = 50);

}  // namespace fpqa
