#include "fpqa/size_stats.hpp"

#include <algorithm>
#include <cmath>

#include "fpqa/errors.hpp"

namespace fpqa {

std::vector<std::pair<double, double>> percentiles(std::vector<double> values,
                                                   const std::vector<double>& ranks) {
    if (values.empty()) raise("empty-input", "percentiles of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    std::vector<std::pair<double, double>> out;
    out.reserve(ranks.size());
    for (double rank : ranks) {
        if (!(rank >= 0.0 && rank <= 100.0)) raise("usage", "percentile rank outside [0, 100]");
        double pos = static_cast<double>(n - 1) * rank / 100.0;
        std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        std::size_t hi = std::min(lo + 1, n - 1);
        double frac = pos - static_cast<double>(lo);
        out.emplace_back(rank, values[lo] + frac * (values[hi] - values[lo]));
    }
    return out;
}

std::pair<double, double> log_normal_fit(const std::vector<double>& areas) {
    if (areas.size() < 2) raise("insufficient-sample", "log-normal fit needs at least 2 areas");
    double sum = 0.0;
    for (double a : areas) {
        if (!(a > 0.0)) raise("domain", "log-normal fit needs positive areas");
        sum += std::log(a);
    }
    double mu = sum / static_cast<double>(areas.size());
    double ss = 0.0;
    for (double a : areas) {
        double d = std::log(a) - mu;
        ss += d * d;
    }
    double sigma = std::sqrt(ss / static_cast<double>(areas.size()));  // population
    return {mu, sigma};
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, int bins) {
    if (bins < 1) raise("usage", "histogram needs at least one bin");
    if (values.empty()) raise("empty-input", "histogram of an empty sample");
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (lo == hi) {  // zero-width range: widen to ±0.5 around the value
        lo -= 0.5;
        hi += 0.5;
    }
    double width = (hi - lo) / static_cast<double>(bins);
    std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        out[static_cast<std::size_t>(b)].low = lo + width * static_cast<double>(b);
        out[static_cast<std::size_t>(b)].high = lo + width * static_cast<double>(b + 1);
    }
    out.back().high = hi;
    for (double v : values) {
        int b = static_cast<int>(std::floor((v - lo) / width));
        b = std::max(0, std::min(bins - 1, b));  // right edge of the last bin is inclusive
        out[static_cast<std::size_t>(b)].count += 1;
    }
    return out;
}

std::vector<double> pdf_curve(double mu, double sigma, const std::vector<double>& xs) {
    if (!(sigma > 0.0)) raise("degenerate-density", "normal density needs sigma > 0");
    constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        double z = (x - mu) / sigma;
        out.push_back(kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z));
    }
    return out;
}

SizeStats size_stats(const std::vector<double>& areas, int bins) {
    SizeStats s;
    s.percentiles = percentiles(areas, kDefaultPercentileRanks);
    auto [mu, sigma] = log_normal_fit(areas);
    s.mu = mu;
    s.sigma = sigma;
    s.n = static_cast<long long>(areas.size());
    std::vector<double> logs;
    logs.reserve(areas.size());
    for (double a : areas) logs.push_back(std::log(a));
    s.histogram = histogram(logs, bins);
    return s;
}

}  // namespace fpqa
