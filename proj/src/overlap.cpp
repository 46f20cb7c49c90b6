#include "fpqa/overlap.hpp"

#include <algorithm>
#include <map>

#include "fpqa/clip.hpp"
#include "fpqa/errors.hpp"
#include "fpqa/spatial_index.hpp"

namespace fpqa {

std::vector<OverlapPair> find_pairs(const Layer& obd, const Layer& ref, double area_epsilon,
                                    Exec exec) {
    std::vector<Envelope> ref_envelopes;
    ref_envelopes.reserve(ref.footprints.size());
    for (const Footprint& fp : ref.footprints) ref_envelopes.push_back(fp.envelope);
    EnvelopeIndex index(ref_envelopes);

    const std::size_t n = obd.footprints.size();
    std::vector<std::vector<OverlapPair>> slots(n);
    for_each_index(n, exec, [&](std::size_t i) {
        const Footprint& a = obd.footprints[i];
        std::vector<int> candidates;
        index.query(a.envelope, candidates);
        for (int c : candidates) {
            const Footprint& b = ref.footprints[static_cast<std::size_t>(c)];
            double inter = intersection_area(a.geometry, b.geometry);
            if (inter <= area_epsilon) continue;
            double uni = a.area + b.area - inter;
            OverlapPair pair;
            pair.obd_id = a.id;
            pair.ref_id = b.id;
            pair.intersection_m2 = inter;
            pair.union_m2 = uni;
            pair.iou = uni > 0.0 ? std::min(inter / uni, 1.0) : 1.0;
            pair.obd_coverage = a.area > 0.0 ? std::min(inter / a.area, 1.0) : 1.0;
            slots[i].push_back(pair);
        }
    });

    std::vector<OverlapPair> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        pairs.insert(pairs.end(), slots[i].begin(), slots[i].end());
    }
    return pairs;
}

OverlapReport overlap_report(const std::vector<OverlapPair>& pairs, long long total_obd,
                             long long total_ref) {
    if (total_obd <= 0 || total_ref <= 0) {
        raise("undefined-percentage", "overlap percentages need non-empty layers");
    }
    std::map<int, int> obd_partners;  // obd_id -> distinct ref partners
    std::map<int, int> ref_partners;
    double iou_sum = 0.0;
    for (const OverlapPair& p : pairs) {
        obd_partners[p.obd_id] += 1;
        ref_partners[p.ref_id] += 1;
        iou_sum += p.iou;
    }

    OverlapReport r;
    r.total_obd = total_obd;
    r.total_ref = total_ref;
    r.overlapping_obd = static_cast<long long>(obd_partners.size());
    r.overlapping_ref = static_cast<long long>(ref_partners.size());
    for (const auto& [id, k] : obd_partners) {
        if (k >= 2) r.multi_overlay_obd += 1;
    }
    for (const auto& [id, k] : ref_partners) {
        if (k >= 2) r.multi_overlay_ref += 1;
    }
    r.oop_pct = 100.0 * static_cast<double>(r.overlapping_obd) / static_cast<double>(total_obd);
    r.orp_pct = 100.0 * static_cast<double>(r.overlapping_ref) / static_cast<double>(total_ref);
    r.noop_pct = 100.0 - r.oop_pct;
    r.norp_pct = 100.0 - r.orp_pct;
    r.omo_pct = 100.0 * static_cast<double>(r.multi_overlay_obd) / static_cast<double>(total_obd);
    r.rmo_pct = 100.0 * static_cast<double>(r.multi_overlay_ref) / static_cast<double>(total_ref);
    if (!pairs.empty()) {
        r.avg_iou = iou_sum / static_cast<double>(pairs.size());
        r.avg_iou_defined = true;
    }
    return r;
}

}  // namespace fpqa
