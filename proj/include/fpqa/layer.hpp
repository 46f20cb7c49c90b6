#pragma once

#include <string>
#include <vector>

#include "fpqa/geometry.hpp"
#include "fpqa/projection.hpp"

namespace fpqa {

enum class Source { OBD, REF };

inline const char* source_name(Source s) { return s == Source::OBD ? "OBD" : "REF"; }

struct Footprint {
    int id = -1;
    Polygon geometry;  // projected metres
    Source source = Source::OBD;
    int original_feature_index = -1;
    // cached derived values, kept in sync with geometry
    double area = 0.0;
    Envelope envelope{};
};

struct Layer {
    std::vector<Footprint> footprints;  // ascending id
    TmZoneSpec zone;
    std::string provenance;
    int dropped_count = 0;   // invalid geometry
    int skipped_count = 0;   // non-polygon features

    const Footprint* by_id(int id) const;
};

// Recomputes the cached area/envelope from the geometry.
void refresh_footprint(Footprint& fp);

Envelope layer_envelope(const Layer& layer);

}  // namespace fpqa
