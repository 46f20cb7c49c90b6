#include "fpqa/registration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fpqa/errors.hpp"

namespace fpqa {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kRadToDeg = 180.0 / kPi;

double sq_dist(const Point2& a, const Point2& b) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// (footprint index, vertex index, position) for every distinct exterior vertex
struct LayerVertex {
    int fp_index;
    int vertex;
    Point2 p;
};

std::vector<LayerVertex> collect_vertices(const Layer& layer) {
    std::vector<LayerVertex> out;
    for (std::size_t f = 0; f < layer.footprints.size(); ++f) {
        const Ring& ext = layer.footprints[f].geometry.exterior;
        for (std::size_t v = 0; v + 1 < ext.size(); ++v) {
            out.push_back({static_cast<int>(f), static_cast<int>(v), ext[v]});
        }
    }
    return out;
}

}  // namespace

double inner_angle(const Point2& p1, const Point2& p2, const Point2& p3) {
    double v1x = p1.x - p2.x, v1y = p1.y - p2.y;
    double v2x = p3.x - p2.x, v2y = p3.y - p2.y;
    double n1 = std::hypot(v1x, v1y);
    double n2 = std::hypot(v2x, v2y);
    if (n1 == 0.0 || n2 == 0.0) raise("degenerate-input", "inner angle with a zero-length vector");
    double c = (v1x * v2x + v1y * v2y) / (n1 * n2);
    c = std::min(1.0, std::max(-1.0, c));
    return std::acos(c) * kRadToDeg;
}

double bearing(const Point2& p1, const Point2& p2) {
    double dx = p2.x - p1.x;
    double dy = p2.y - p1.y;
    if (dx == 0.0 && dy == 0.0) raise("degenerate-input", "bearing of coincident points");
    double b = std::atan2(dx, dy) * kRadToDeg;
    b = std::fmod(b + 360.0, 360.0);
    return b == 360.0 ? 0.0 : b;
}

double circular_diff_deg(double a, double b) {
    double d = std::abs(a - b);
    d = std::fmod(d, 360.0);
    return std::min(d, 360.0 - d);
}

VertexSignature vertex_signature(const Ring& exterior, std::size_t vertex) {
    const std::size_t m = exterior.size() - 1;  // distinct vertices
    if (m < 3 || vertex >= m) raise("degenerate-input", "vertex index outside the ring");
    const Point2& prev = exterior[(vertex + m - 1) % m];
    const Point2& cur = exterior[vertex];
    const Point2& next = exterior[(vertex + 1) % m];
    VertexSignature s;
    s.theta = inner_angle(prev, cur, next);
    s.brg_in = bearing(prev, cur);
    s.brg_out = bearing(cur, next);
    return s;
}

std::array<Point2, 5> select_control_targets(const Layer& layer) {
    if (layer.footprints.empty()) raise("empty-input", "control targets of an empty layer");
    std::vector<LayerVertex> verts = collect_vertices(layer);

    // distinct coordinates available?
    {
        std::vector<Point2> uniq;
        for (const LayerVertex& v : verts) uniq.push_back(v.p);
        std::sort(uniq.begin(), uniq.end(), [](const Point2& a, const Point2& b) {
            return a.x < b.x || (a.x == b.x && a.y < b.y);
        });
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        if (uniq.size() < 5) {
            raise("insufficient-geometry", "need at least 5 distinct building vertices");
        }
    }

    Envelope env = layer.footprints.front().envelope;
    for (const Footprint& fp : layer.footprints) env.expand(fp.envelope);

    std::vector<Point2> all_points;
    all_points.reserve(verts.size());
    for (const LayerVertex& v : verts) all_points.push_back(v.p);
    Point2 hull_center = centroid(convex_hull(all_points));

    const Point2 wanted[5] = {{env.min_x, env.min_y},
                              {env.max_x, env.min_y},
                              {env.max_x, env.max_y},
                              {env.min_x, env.max_y},
                              hull_center};

    std::array<Point2, 5> targets;
    std::vector<Point2> chosen;
    for (int t = 0; t < 5; ++t) {
        double best = std::numeric_limits<double>::infinity();
        const LayerVertex* pick = nullptr;
        for (const LayerVertex& v : verts) {
            bool used = false;
            for (const Point2& c : chosen) {
                if (c == v.p) {
                    used = true;
                    break;
                }
            }
            if (used) continue;
            double d = sq_dist(v.p, wanted[t]);
            if (d < best) {
                best = d;
                pick = &v;
            }
        }
        if (pick == nullptr) raise("insufficient-geometry", "ran out of distinct vertices");
        targets[static_cast<std::size_t>(t)] = pick->p;
        chosen.push_back(pick->p);
    }
    return targets;
}

std::vector<MatchedVertexPair> match_homologous(const Layer& src, const Layer& dst,
                                                const std::array<Point2, 5>& targets,
                                                const MatchOptions& opt) {
    std::vector<LayerVertex> src_verts = collect_vertices(src);
    std::vector<LayerVertex> dst_verts = collect_vertices(dst);
    if (src_verts.empty() || dst_verts.empty()) {
        raise("registration-impossible", "a layer has no vertices");
    }

    std::vector<MatchedVertexPair> out;
    for (const Point2& target : targets) {
        // the source vertex at (nearest to) the target
        const LayerVertex* sv = nullptr;
        double best = std::numeric_limits<double>::infinity();
        for (const LayerVertex& v : src_verts) {
            double d = sq_dist(v.p, target);
            if (d < best) {
                best = d;
                sv = &v;
            }
        }
        VertexSignature ssig = vertex_signature(
            src.footprints[static_cast<std::size_t>(sv->fp_index)].geometry.exterior,
            static_cast<std::size_t>(sv->vertex));

        const LayerVertex* match = nullptr;
        double match_d2 = std::numeric_limits<double>::infinity();
        VertexSignature msig;
        for (const LayerVertex& v : dst_verts) {
            double d2 = sq_dist(v.p, sv->p);
            if (d2 > opt.radius * opt.radius) continue;
            VertexSignature dsig = vertex_signature(
                dst.footprints[static_cast<std::size_t>(v.fp_index)].geometry.exterior,
                static_cast<std::size_t>(v.vertex));
            if (std::abs(dsig.theta - ssig.theta) > opt.angle_tol) continue;
            if (circular_diff_deg(dsig.brg_in, ssig.brg_in) > opt.angle_tol) continue;
            if (circular_diff_deg(dsig.brg_out, ssig.brg_out) > opt.angle_tol) continue;
            if (d2 < match_d2) {
                match_d2 = d2;
                match = &v;
                msig = dsig;
            }
        }
        if (match == nullptr) continue;
        MatchedVertexPair pair;
        pair.src = sv->p;
        pair.dst = match->p;
        pair.d_theta = std::abs(msig.theta - ssig.theta);
        pair.d_brg_in = circular_diff_deg(msig.brg_in, ssig.brg_in);
        pair.d_brg_out = circular_diff_deg(msig.brg_out, ssig.brg_out);
        pair.dist = std::sqrt(match_d2);
        out.push_back(pair);
    }
    if (out.size() < 3) {
        raise("registration-impossible",
              "only " + std::to_string(out.size()) + " homologous matches; the affine needs 3");
    }
    return out;
}

namespace {

// Householder QR least squares for the n×3 design [x y 1] against one
// right-hand side; returns the 3 coefficients.
struct QrDesign {
    std::vector<double> q;  // n×3, orthonormal columns
    double r[3][3] = {};
    std::size_t n = 0;
    bool singular = false;
};

QrDesign qr_factor(const std::vector<Point2>& src) {
    const std::size_t n = src.size();
    QrDesign d;
    d.n = n;
    d.q.resize(n * 3);
    for (std::size_t i = 0; i < n; ++i) {
        d.q[i * 3 + 0] = src[i].x;
        d.q[i * 3 + 1] = src[i].y;
        d.q[i * 3 + 2] = 1.0;
    }
    // modified Gram–Schmidt, numerically adequate for 3 well-scaled columns
    double scale = 0.0;
    for (int k = 0; k < 3; ++k) {
        for (int j = 0; j < k; ++j) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += d.q[i * 3 + j] * d.q[i * 3 + k];
            d.r[j][k] = dot;
            for (std::size_t i = 0; i < n; ++i) d.q[i * 3 + k] -= dot * d.q[i * 3 + j];
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += d.q[i * 3 + k] * d.q[i * 3 + k];
        norm = std::sqrt(norm);
        d.r[k][k] = norm;
        scale = std::max(scale, norm);
        if (norm <= 1e-12 * std::max(scale, 1.0)) {
            d.singular = true;
            return d;
        }
        for (std::size_t i = 0; i < n; ++i) d.q[i * 3 + k] /= norm;
    }
    return d;
}

void qr_solve(const QrDesign& d, const std::vector<double>& rhs, double coeff[3]) {
    double qtb[3] = {};
    for (int k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < d.n; ++i) qtb[k] += d.q[i * 3 + k] * rhs[i];
    }
    for (int k = 2; k >= 0; --k) {
        double s = qtb[k];
        for (int j = k + 1; j < 3; ++j) s -= d.r[k][j] * coeff[j];
        coeff[k] = s / d.r[k][k];
    }
}

}  // namespace

AffineFit fit_affine(const std::vector<MatchedVertexPair>& pairs) {
    const std::size_t n = pairs.size();
    if (n < 3) raise("singular-system", "affine fit needs at least 3 matched pairs");

    // center for conditioning; UTM coordinates are large
    double msx = 0.0, msy = 0.0, mdx = 0.0, mdy = 0.0;
    for (const MatchedVertexPair& p : pairs) {
        msx += p.src.x;
        msy += p.src.y;
        mdx += p.dst.x;
        mdy += p.dst.y;
    }
    msx /= static_cast<double>(n);
    msy /= static_cast<double>(n);
    mdx /= static_cast<double>(n);
    mdy /= static_cast<double>(n);

    std::vector<Point2> src_c(n);
    std::vector<double> rhs_x(n), rhs_y(n);
    for (std::size_t i = 0; i < n; ++i) {
        src_c[i] = {pairs[i].src.x - msx, pairs[i].src.y - msy};
        rhs_x[i] = pairs[i].dst.x - mdx;
        rhs_y[i] = pairs[i].dst.y - mdy;
    }

    QrDesign qr = qr_factor(src_c);
    if (qr.singular) raise("singular-system", "source points are collinear");

    double cx[3], cy[3];
    qr_solve(qr, rhs_x, cx);
    qr_solve(qr, rhs_y, cy);

    AffineFit fit;
    fit.a = cx[0];
    fit.b = cx[1];
    fit.c = cy[0];
    fit.d = cy[1];
    fit.t_x = cx[2] + mdx - fit.a * msx - fit.b * msy;
    fit.t_y = cy[2] + mdy - fit.c * msx - fit.d * msy;

    fit.residuals.reserve(n);
    double sum_sq = 0.0;
    for (const MatchedVertexPair& p : pairs) {
        Point2 mapped = apply_affine(p.src, fit);
        double r = std::hypot(mapped.x - p.dst.x, mapped.y - p.dst.y);
        fit.residuals.push_back(r);
        sum_sq += r * r;
    }
    fit.fit_error = std::sqrt(sum_sq);
    return fit;
}

AccuracyReport accuracy_report(const std::vector<MatchedVertexPair>& pairs) {
    if (pairs.empty()) raise("empty-input", "accuracy report over no matches");
    AccuracyReport r;
    for (const MatchedVertexPair& p : pairs) {
        r.mean_angle += p.d_theta;
        r.mean_brg1 += p.d_brg_in;
        r.mean_brg2 += p.d_brg_out;
        r.mean_dist += p.dist;
    }
    double n = static_cast<double>(pairs.size());
    r.mean_angle /= n;
    r.mean_brg1 /= n;
    r.mean_brg2 /= n;
    r.mean_dist /= n;
    r.n_matches = static_cast<int>(pairs.size());
    return r;
}

Point2 apply_affine(const Point2& p, const AffineFit& t) {
    return {t.a * p.x + t.b * p.y + t.t_x, t.c * p.x + t.d * p.y + t.t_y};
}

Layer apply_affine(const Layer& layer, const AffineFit& t) {
    if (std::abs(t.det()) <= 1e-12) raise("singular-transform", "affine determinant is zero");
    Layer out = layer;
    for (Footprint& fp : out.footprints) {
        Polygon g = fp.geometry;
        for (Point2& p : g.exterior) p = apply_affine(p, t);
        for (Ring& h : g.holes) {
            for (Point2& p : h) p = apply_affine(p, t);
        }
        fp.geometry = normalize(g);
        refresh_footprint(fp);
    }
    return out;
}

}  // namespace fpqa
