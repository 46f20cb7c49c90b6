#include "fpqa/clip.hpp"

#include <algorithm>
#include <cmath>

#include "fpqa/errors.hpp"

// Intersection areas via signed fan-triangle decomposition: each ring is
// fanned into triangles from its first vertex; the signed indicator of the
// polygon is the sum of its triangles' signed indicators (holes carry
// negative sign through their CW winding), so
//   |P ∩ Q| = Σ_i Σ_j sign_i · sign_j · |T_i ∩ U_j|
// with every |T ∩ U| an intersection of convex pieces, clipped by
// Sutherland–Hodgman. All arithmetic runs in a local frame around the
// combined envelope to keep the cross products well-conditioned.

namespace fpqa {

namespace {

constexpr int kMaxClipVerts = 16;

struct ConvexPoly {
    Point2 v[kMaxClipVerts];
    int n = 0;
};

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double area(const ConvexPoly& p) {
    if (p.n < 3) return 0.0;
    double s = 0.0;
    for (int i = 0; i < p.n; ++i) {
        const Point2& a = p.v[i];
        const Point2& b = p.v[(i + 1) % p.n];
        s += a.x * b.y - b.x * a.y;
    }
    return std::abs(s) / 2.0;
}

// Clips `subject` by the half-plane left of (a → b); subject stays convex.
void clip_halfplane(const ConvexPoly& subject, const Point2& a, const Point2& b,
                    ConvexPoly& out) {
    out.n = 0;
    for (int i = 0; i < subject.n; ++i) {
        const Point2& cur = subject.v[i];
        const Point2& nxt = subject.v[(i + 1) % subject.n];
        double dc = cross(a, b, cur);
        double dn = cross(a, b, nxt);
        if (dc >= 0.0) {
            if (out.n < kMaxClipVerts) out.v[out.n++] = cur;
        }
        if ((dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0)) {
            double t = dc / (dc - dn);
            if (out.n < kMaxClipVerts) {
                out.v[out.n++] = {cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)};
            }
        }
    }
}

// `clip` must be convex CCW (open list).
void clip_convex(const ConvexPoly& subject, const Point2* clip, int nclip, ConvexPoly& out) {
    ConvexPoly buf[2];
    buf[0] = subject;
    int cur = 0;
    for (int e = 0; e < nclip && buf[cur].n > 0; ++e) {
        clip_halfplane(buf[cur], clip[e], clip[(e + 1) % nclip], buf[1 - cur]);
        cur = 1 - cur;
    }
    out = buf[cur];
}

struct Tri {
    Point2 a, b, c;  // CCW
    double sign;     // ±1 from the ring winding
};

// Fans every ring of the polygon from its first vertex, shifted into the
// local frame. Zero-area slivers are dropped.
void fan_polygon(const Polygon& p, const Point2& origin, std::vector<Tri>& out) {
    auto fan_ring = [&](const Ring& r) {
        if (r.size() < 4) return;  // closed ring: at least a triangle
        Point2 p0{r[0].x - origin.x, r[0].y - origin.y};
        for (std::size_t k = 1; k + 2 < r.size(); ++k) {
            Point2 p1{r[k].x - origin.x, r[k].y - origin.y};
            Point2 p2{r[k + 1].x - origin.x, r[k + 1].y - origin.y};
            double s = cross(p0, p1, p2);
            if (s == 0.0) continue;
            if (s > 0.0) {
                out.push_back({p0, p1, p2, 1.0});
            } else {
                out.push_back({p0, p2, p1, -1.0});
            }
        }
    };
    fan_ring(p.exterior);
    for (const Ring& h : p.holes) fan_ring(h);
}

Point2 local_origin(const Envelope& ea, const Envelope& eb) {
    Envelope u = ea;
    u.expand(eb);
    return u.center();
}

double pair_area_sum(const std::vector<Tri>& ta, const std::vector<Tri>& tb,
                     const Point2* extra_clip, int n_extra) {
    double total = 0.0;
    ConvexPoly subject, clipped, final_piece;
    for (const Tri& t : ta) {
        subject.n = 3;
        subject.v[0] = t.a;
        subject.v[1] = t.b;
        subject.v[2] = t.c;
        for (const Tri& u : tb) {
            Point2 clip_tri[3] = {u.a, u.b, u.c};
            clip_convex(subject, clip_tri, 3, clipped);
            if (clipped.n < 3) continue;
            if (extra_clip != nullptr) {
                clip_convex(clipped, extra_clip, n_extra, final_piece);
                total += t.sign * u.sign * area(final_piece);
            } else {
                total += t.sign * u.sign * area(clipped);
            }
        }
    }
    return total;
}

}  // namespace

double intersection_area(const Polygon& a, const Polygon& b) {
    Envelope ea = envelope_of(a);
    Envelope eb = envelope_of(b);
    if (!ea.overlaps(eb)) return 0.0;
    Point2 origin = local_origin(ea, eb);
    std::vector<Tri> ta, tb;
    fan_polygon(a, origin, ta);
    fan_polygon(b, origin, tb);
    double s = pair_area_sum(ta, tb, nullptr, 0);
    // FP guard: the true value lies in [0, min(|a|, |b|)]
    s = std::min(s, std::min(polygon_area(a), polygon_area(b)));
    return std::max(s, 0.0);
}

double union_area(const Polygon& a, const Polygon& b) {
    return polygon_area(a) + polygon_area(b) - intersection_area(a, b);
}

double area_in_cell(const Polygon& p, const Ring& convex_cell) {
    Envelope ep = envelope_of(p);
    Polygon cell_poly{convex_cell, {}};
    Envelope ec = envelope_of(cell_poly);
    if (!ep.overlaps(ec)) return 0.0;
    Point2 origin = local_origin(ep, ec);
    std::vector<Tri> tris;
    fan_polygon(p, origin, tris);

    Point2 cell[kMaxClipVerts];
    int ncell = static_cast<int>(convex_cell.size()) - 1;
    if (ncell < 3 || ncell > kMaxClipVerts) raise("invalid-geometry", "bad convex cell ring");
    for (int i = 0; i < ncell; ++i) {
        cell[i] = {convex_cell[i].x - origin.x, convex_cell[i].y - origin.y};
    }

    double total = 0.0;
    ConvexPoly subject, clipped;
    for (const Tri& t : tris) {
        subject.n = 3;
        subject.v[0] = t.a;
        subject.v[1] = t.b;
        subject.v[2] = t.c;
        clip_convex(subject, cell, ncell, clipped);
        total += t.sign * area(clipped);
    }
    return std::max(total, 0.0);
}

double intersection_area_in_cell(const Polygon& a, const Polygon& b, const Ring& convex_cell) {
    Envelope ea = envelope_of(a);
    Envelope eb = envelope_of(b);
    Polygon cell_poly{convex_cell, {}};
    Envelope ec = envelope_of(cell_poly);
    if (!ea.overlaps(eb) || !ea.overlaps(ec) || !eb.overlaps(ec)) return 0.0;
    Point2 origin = local_origin(ea, eb);
    std::vector<Tri> ta, tb;
    fan_polygon(a, origin, ta);
    fan_polygon(b, origin, tb);

    Point2 cell[kMaxClipVerts];
    int ncell = static_cast<int>(convex_cell.size()) - 1;
    if (ncell < 3 || ncell > kMaxClipVerts) raise("invalid-geometry", "bad convex cell ring");
    for (int i = 0; i < ncell; ++i) {
        cell[i] = {convex_cell[i].x - origin.x, convex_cell[i].y - origin.y};
    }
    double s = pair_area_sum(ta, tb, cell, ncell);
    return std::max(s, 0.0);
}

}  // namespace fpqa
