#include "fpqa/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace fpqa {

namespace {

// 2D -> 1D bucket key; offsets keep indices positive.
constexpr long long kBias = 1LL << 30;

}  // namespace

std::uint64_t EnvelopeIndex::key(long long ix, long long iy) const {
    return (static_cast<std::uint64_t>(ix + kBias) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy + kBias));
}

EnvelopeIndex::EnvelopeIndex(const std::vector<Envelope>& items) : items_(items) {
    if (items_.empty()) {
        cell_ = 1.0;
        return;
    }
    Envelope all = items_.front();
    double mean_extent = 0.0;
    for (const Envelope& e : items_) {
        all.expand(e);
        mean_extent += (e.width() + e.height()) / 2.0;
    }
    mean_extent /= static_cast<double>(items_.size());
    origin_x_ = all.min_x;
    origin_y_ = all.min_y;
    // bucket around the typical item size, clamped so the table stays sane
    double span = std::max(all.width(), all.height());
    cell_ = std::max(mean_extent * 2.0, span / 2048.0);
    if (!(cell_ > 0.0)) cell_ = 1.0;

    for (std::size_t i = 0; i < items_.size(); ++i) {
        const Envelope& e = items_[i];
        long long x0 = static_cast<long long>(std::floor((e.min_x - origin_x_) / cell_));
        long long x1 = static_cast<long long>(std::floor((e.max_x - origin_x_) / cell_));
        long long y0 = static_cast<long long>(std::floor((e.min_y - origin_y_) / cell_));
        long long y1 = static_cast<long long>(std::floor((e.max_y - origin_y_) / cell_));
        for (long long ix = x0; ix <= x1; ++ix) {
            for (long long iy = y0; iy <= y1; ++iy) {
                buckets_[key(ix, iy)].push_back(static_cast<int>(i));
            }
        }
    }
}

void EnvelopeIndex::query(const Envelope& q, std::vector<int>& out) const {
    out.clear();
    if (items_.empty()) return;
    long long x0 = static_cast<long long>(std::floor((q.min_x - origin_x_) / cell_));
    long long x1 = static_cast<long long>(std::floor((q.max_x - origin_x_) / cell_));
    long long y0 = static_cast<long long>(std::floor((q.min_y - origin_y_) / cell_));
    long long y1 = static_cast<long long>(std::floor((q.max_y - origin_y_) / cell_));
    for (long long ix = x0; ix <= x1; ++ix) {
        for (long long iy = y0; iy <= y1; ++iy) {
            auto it = buckets_.find(key(ix, iy));
            if (it == buckets_.end()) continue;
            for (int id : it->second) {
                if (items_[static_cast<std::size_t>(id)].overlaps(q)) out.push_back(id);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

std::vector<int> EnvelopeIndex::query(const Envelope& q) const {
    std::vector<int> out;
    query(q, out);
    return out;
}

}  // namespace fpqa
