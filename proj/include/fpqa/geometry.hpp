#pragma once

#include <string>
#include <vector>

namespace fpqa {

// Planar point in the projected analysis frame (metres).
struct Point2 {
    double x = 0.0;  // easting
    double y = 0.0;  // northing
};

inline bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }

// Vertex list of one ring. Normalized rings are explicitly closed (first
// vertex repeated at the end) and free of consecutive duplicates.
using Ring = std::vector<Point2>;

struct Polygon {
    Ring exterior;            // counter-clockwise after normalization
    std::vector<Ring> holes;  // clockwise after normalization
};

struct Envelope {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    Point2 center() const { return {(min_x + max_x) / 2.0, (min_y + max_y) / 2.0}; }

    bool overlaps(const Envelope& o) const {
        return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
    }
    void expand(const Point2& p) {
        if (p.x < min_x) min_x = p.x;
        if (p.y < min_y) min_y = p.y;
        if (p.x > max_x) max_x = p.x;
        if (p.y > max_y) max_y = p.y;
    }
    void expand(const Envelope& o) {
        if (o.min_x < min_x) min_x = o.min_x;
        if (o.min_y < min_y) min_y = o.min_y;
        if (o.max_x > max_x) max_x = o.max_x;
        if (o.max_y > max_y) max_y = o.max_y;
    }
    static Envelope intersect(const Envelope& a, const Envelope& b) {
        return {std::max(a.min_x, b.min_x), std::max(a.min_y, b.min_y),
                std::min(a.max_x, b.max_x), std::min(a.max_y, b.max_y)};
    }
};

// Vertices closer than this are merged when normalizing a ring.
inline constexpr double kSnapTolerance = 1e-9;  // metres

struct Defect {
    enum class Kind {
        non_finite,
        too_few_vertices,
        duplicate_vertices,
        not_closed,
        wrong_winding,
        zero_area,
        self_intersection,
        hole_outside,
    };
    Kind kind;
    bool fixable = false;  // normalization repairs it
    std::string detail;
};

// Closes the rings, snaps near-duplicate vertices, and enforces winding
// (exterior CCW, holes CW). Throws invalid-geometry for non-finite input and
// degenerate-input for rings that collapse below three distinct vertices or
// to zero area. Topology (self-intersection, hole placement) is untouched.
Polygon normalize(Polygon p);

// Diagnostic only: reports every defect found, fixable or not.
std::vector<Defect> validate(const Polygon& p);

// True when the polygon is normalized, simple, positive-area, and every hole
// sits inside the exterior. This is the ingest retention test.
bool valid_for_analysis(const Polygon& p);

double signed_ring_area(const Ring& r);
double polygon_area(const Polygon& p);
Point2 centroid(const Polygon& p);
Polygon convex_hull(std::vector<Point2> points);
Envelope envelope_of(const Polygon& p);
Envelope bounding_envelope(const std::vector<Polygon>& geoms);

// Boundary-inclusive point membership; holes honored.
bool point_in_ring(const Point2& pt, const Ring& r);
bool point_in_polygon(const Point2& pt, const Polygon& p);

// True when the closed point sets meet (shared edges and touching vertices count).
bool polygons_intersect(const Polygon& a, const Polygon& b);

}  // namespace fpqa
