#include "fpqa/layer.hpp"

#include <algorithm>

#include "fpqa/clip.hpp"
#include "fpqa/errors.hpp"

namespace fpqa {

const Footprint* Layer::by_id(int id) const {
    auto it = std::lower_bound(footprints.begin(), footprints.end(), id,
                               [](const Footprint& fp, int v) { return fp.id < v; });
    if (it == footprints.end() || it->id != id) return nullptr;
    return &*it;
}

void refresh_footprint(Footprint& fp) {
    fp.area = polygon_area(fp.geometry);
    fp.envelope = envelope_of(fp.geometry);
}

Envelope layer_envelope(const Layer& layer) {
    if (layer.footprints.empty()) raise("empty-input", "envelope of an empty layer");
    Envelope e = layer.footprints.front().envelope;
    for (const Footprint& fp : layer.footprints) e.expand(fp.envelope);
    return e;
}

}  // namespace fpqa
