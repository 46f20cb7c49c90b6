#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fpqa/geometry.hpp"

namespace fpqa {

// Uniform-grid index over item envelopes. Queries return candidate ids in
// ascending order without duplicates; callers confirm with exact geometry.
class EnvelopeIndex {
public:
    explicit EnvelopeIndex(const std::vector<Envelope>& items);

    std::vector<int> query(const Envelope& q) const;
    void query(const Envelope& q, std::vector<int>& out) const;

private:
    std::vector<Envelope> items_;
    double cell_ = 1.0;
    double origin_x_ = 0.0, origin_y_ = 0.0;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets_;

    std::uint64_t key(long long ix, long long iy) const;
};

}  // namespace fpqa
