#include "fpqa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fpqa/errors.hpp"

namespace fpqa {

namespace {

bool finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool near(const Point2& a, const Point2& b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

// Open vertex list (closing duplicate removed), snapped.
Ring open_vertices(const Ring& r, double tol) {
    Ring out;
    out.reserve(r.size());
    for (const Point2& p : r) {
        if (out.empty() || !near(out.back(), p, tol)) out.push_back(p);
    }
    while (out.size() > 1 && near(out.front(), out.back(), tol)) out.pop_back();
    return out;
}

double signed_area_open(const Ring& v) {
    if (v.empty()) return 0.0;
    const double ox = v[0].x, oy = v[0].y;  // local frame for UTM-sized coordinates
    double s = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const Point2& p = v[i];
        const Point2& q = v[(i + 1) % n];
        s += (p.x - ox) * (q.y - oy) - (q.x - ox) * (p.y - oy);
    }
    return s / 2.0;
}

Ring closed(Ring v) {
    v.push_back(v.front());
    return v;
}

Ring normalize_ring(const Ring& r, bool want_ccw) {
    for (const Point2& p : r) {
        if (!finite(p)) raise("invalid-geometry", "non-finite coordinate");
    }
    Ring v = open_vertices(r, kSnapTolerance);
    if (v.size() < 3) raise("degenerate-input", "ring has fewer than 3 distinct vertices");
    double area = signed_area_open(v);
    if (area == 0.0) raise("degenerate-input", "zero-area ring");
    if ((area > 0.0) != want_ccw) std::reverse(v.begin(), v.end());
    return closed(std::move(v));
}

// 0 none, 1 proper crossing, 2 touching/collinear overlap
int segment_relation(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    double d1 = cross(a, b, c);
    double d2 = cross(a, b, d);
    double d3 = cross(c, d, a);
    double d4 = cross(c, d, b);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return 1;
    auto on = [](const Point2& p, const Point2& q, const Point2& r2) {
        return std::min(p.x, q.x) <= r2.x && r2.x <= std::max(p.x, q.x) &&
               std::min(p.y, q.y) <= r2.y && r2.y <= std::max(p.y, q.y);
    };
    if (d1 == 0 && on(a, b, c)) return 2;
    if (d2 == 0 && on(a, b, d)) return 2;
    if (d3 == 0 && on(c, d, a)) return 2;
    if (d4 == 0 && on(c, d, b)) return 2;
    return 0;
}

// Simple-ring check over a closed ring: no proper crossing and no touching
// between non-adjacent edges.
bool ring_self_intersects(const Ring& r) {
    const std::size_t n = r.size() - 1;  // edges
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            int rel = segment_relation(r[i], r[i + 1], r[j], r[j + 1]);
            if (adjacent) {
                // shared endpoint is expected; a collinear overlap is not
                if (rel == 1) return true;
                continue;
            }
            if (rel != 0) return true;
        }
    }
    return false;
}

bool ring_inside_ring(const Ring& inner, const Ring& outer) {
    for (std::size_t i = 0; i + 1 < inner.size(); ++i) {
        if (!point_in_ring(inner[i], outer)) return false;
    }
    // vertex containment plus no edge crossing
    for (std::size_t i = 0; i + 1 < inner.size(); ++i) {
        for (std::size_t j = 0; j + 1 < outer.size(); ++j) {
            if (segment_relation(inner[i], inner[i + 1], outer[j], outer[j + 1]) == 1)
                return false;
        }
    }
    return true;
}

}  // namespace

Polygon normalize(Polygon p) {
    Polygon out;
    out.exterior = normalize_ring(p.exterior, /*want_ccw=*/true);
    out.holes.reserve(p.holes.size());
    for (const Ring& h : p.holes) {
        out.holes.push_back(normalize_ring(h, /*want_ccw=*/false));
    }
    return out;
}

std::vector<Defect> validate(const Polygon& p) {
    std::vector<Defect> defects;
    auto check_ring = [&](const Ring& r, bool want_ccw, const std::string& which) {
        for (const Point2& pt : r) {
            if (!finite(pt)) {
                defects.push_back({Defect::Kind::non_finite, false, which + ": non-finite coordinate"});
                return;
            }
        }
        Ring v = open_vertices(r, kSnapTolerance);
        if (v.size() < r.size() - (r.size() > 1 && r.front() == r.back() ? 1 : 0)) {
            defects.push_back({Defect::Kind::duplicate_vertices, true, which + ": consecutive duplicate vertices"});
        }
        if (r.size() < 2 || !(r.front() == r.back())) {
            defects.push_back({Defect::Kind::not_closed, true, which + ": ring not explicitly closed"});
        }
        if (v.size() < 3) {
            defects.push_back({Defect::Kind::too_few_vertices, false, which + ": fewer than 3 distinct vertices"});
            return;
        }
        double area = signed_area_open(v);
        if (area == 0.0) {
            defects.push_back({Defect::Kind::zero_area, false, which + ": zero area"});
        } else if ((area > 0.0) != want_ccw) {
            defects.push_back({Defect::Kind::wrong_winding, true, which + ": reversed winding"});
        }
        if (ring_self_intersects(closed(v))) {
            defects.push_back({Defect::Kind::self_intersection, false, which + ": self-intersection"});
        }
    };
    check_ring(p.exterior, true, "exterior");
    for (std::size_t i = 0; i < p.holes.size(); ++i) {
        check_ring(p.holes[i], false, "hole " + std::to_string(i));
    }
    // hole placement is only meaningful once the rings themselves are sound
    if (defects.empty()) {
        for (std::size_t i = 0; i < p.holes.size(); ++i) {
            Ring h = open_vertices(p.holes[i], kSnapTolerance);
            if (!ring_inside_ring(closed(h), p.exterior)) {
                defects.push_back({Defect::Kind::hole_outside, false,
                                   "hole " + std::to_string(i) + ": not inside the exterior"});
            }
        }
    }
    return defects;
}

bool valid_for_analysis(const Polygon& p) {
    for (const Defect& d : validate(p)) {
        if (!d.fixable) return false;
    }
    return true;
}

double signed_ring_area(const Ring& r) {
    if (r.size() < 2) return 0.0;
    // shoelace in a local frame; raw UTM-sized coordinates would cancel badly
    const double ox = r[0].x, oy = r[0].y;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        double ax = r[i].x - ox, ay = r[i].y - oy;
        double bx = r[i + 1].x - ox, by = r[i + 1].y - oy;
        s += ax * by - bx * ay;
    }
    return s / 2.0;
}

double polygon_area(const Polygon& p) {
    for (const Point2& pt : p.exterior) {
        if (!finite(pt)) raise("invalid-geometry", "non-finite coordinate");
    }
    double a = std::abs(signed_ring_area(p.exterior));
    for (const Ring& h : p.holes) {
        a -= std::abs(signed_ring_area(h));
    }
    return std::max(a, 0.0);
}

Point2 centroid(const Polygon& p) {
    if (p.exterior.empty()) raise("degenerate-input", "centroid of an empty polygon");
    const double ox = p.exterior[0].x, oy = p.exterior[0].y;  // local frame
    double area2 = 0.0;  // twice the signed area
    double cx = 0.0, cy = 0.0;
    auto accumulate = [&](const Ring& r) {
        for (std::size_t i = 0; i + 1 < r.size(); ++i) {
            double ax = r[i].x - ox, ay = r[i].y - oy;
            double bx = r[i + 1].x - ox, by = r[i + 1].y - oy;
            double w = ax * by - bx * ay;
            area2 += w;
            cx += (ax + bx) * w;
            cy += (ay + by) * w;
        }
    };
    accumulate(p.exterior);
    for (const Ring& h : p.holes) accumulate(h);  // CW holes subtract themselves
    if (std::abs(area2) < 1e-30) raise("degenerate-input", "centroid of zero-area polygon");
    return {ox + cx / (3.0 * area2), oy + cy / (3.0 * area2)};
}

Polygon convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) raise("degenerate-input", "convex hull needs 3 distinct points");

    auto build = [&](bool lower) {
        std::vector<Point2> chain;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Point2& p = lower ? pts[k] : pts[pts.size() - 1 - k];
            while (chain.size() >= 2 &&
                   cross(chain[chain.size() - 2], chain[chain.size() - 1], p) <= 0.0) {
                chain.pop_back();
            }
            chain.push_back(p);
        }
        chain.pop_back();
        return chain;
    };
    std::vector<Point2> lower = build(true);
    std::vector<Point2> upper = build(false);
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) raise("degenerate-input", "all points collinear");

    Polygon hull;
    hull.exterior = lower;
    hull.exterior.push_back(lower.front());
    return hull;
}

Envelope envelope_of(const Polygon& p) {
    Envelope e{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
               -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point2& pt : p.exterior) e.expand(pt);
    return e;
}

Envelope bounding_envelope(const std::vector<Polygon>& geoms) {
    if (geoms.empty()) raise("empty-input", "bounding envelope of an empty list");
    Envelope e = envelope_of(geoms.front());
    for (std::size_t i = 1; i < geoms.size(); ++i) e.expand(envelope_of(geoms[i]));
    return e;
}

bool point_in_ring(const Point2& pt, const Ring& r) {
    bool inside = false;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const Point2& a = r[i];
        const Point2& b = r[i + 1];
        // boundary counts as inside
        double d = cross(a, b, pt);
        if (d == 0.0 && std::min(a.x, b.x) <= pt.x && pt.x <= std::max(a.x, b.x) &&
            std::min(a.y, b.y) <= pt.y && pt.y <= std::max(a.y, b.y)) {
            return true;
        }
        if ((a.y > pt.y) != (b.y > pt.y)) {
            double x_cross = a.x + (pt.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (x_cross > pt.x) inside = !inside;
        }
    }
    return inside;
}

namespace {

bool point_on_ring_boundary(const Point2& pt, const Ring& r) {
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const Point2& a = r[i];
        const Point2& b = r[i + 1];
        if (cross(a, b, pt) == 0.0 && std::min(a.x, b.x) <= pt.x && pt.x <= std::max(a.x, b.x) &&
            std::min(a.y, b.y) <= pt.y && pt.y <= std::max(a.y, b.y)) {
            return true;
        }
    }
    return false;
}

}  // namespace

bool point_in_polygon(const Point2& pt, const Polygon& p) {
    if (!point_in_ring(pt, p.exterior)) return false;
    for (const Ring& h : p.holes) {
        if (point_on_ring_boundary(pt, h)) continue;  // hole boundary belongs to the polygon
        if (point_in_ring(pt, h)) return false;
    }
    return true;
}

bool polygons_intersect(const Polygon& a, const Polygon& b) {
    if (!envelope_of(a).overlaps(envelope_of(b))) return false;
    auto each_ring = [](const Polygon& p, auto&& fn) {
        fn(p.exterior);
        for (const Ring& h : p.holes) fn(h);
    };
    bool hit = false;
    each_ring(a, [&](const Ring& r) {
        for (std::size_t i = 0; !hit && i + 1 < r.size(); ++i) {
            if (point_in_polygon(r[i], b)) hit = true;
        }
    });
    if (hit) return true;
    each_ring(b, [&](const Ring& r) {
        for (std::size_t i = 0; !hit && i + 1 < r.size(); ++i) {
            if (point_in_polygon(r[i], a)) hit = true;
        }
    });
    if (hit) return true;
    each_ring(a, [&](const Ring& ra) {
        each_ring(b, [&](const Ring& rb) {
            for (std::size_t i = 0; !hit && i + 1 < ra.size(); ++i) {
                for (std::size_t j = 0; !hit && j + 1 < rb.size(); ++j) {
                    if (segment_relation(ra[i], ra[i + 1], rb[j], rb[j + 1]) != 0) hit = true;
                }
            }
        });
    });
    return hit;
}

}  // namespace fpqa
