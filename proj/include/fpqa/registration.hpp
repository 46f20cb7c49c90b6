#pragma once

#include <array>
#include <vector>

#include "fpqa/layer.hpp"

namespace fpqa {

// Per-vertex geometric signature used to identify homologous vertices.
struct VertexSignature {
    double theta = 0.0;    // inner angle at the vertex, degrees in [0, 180]
    double brg_in = 0.0;   // bearing previous→this, degrees in [0, 360)
    double brg_out = 0.0;  // bearing this→next, degrees in [0, 360)
};

struct MatchedVertexPair {
    Point2 src;
    Point2 dst;
    double d_theta = 0.0;    // absolute angle difference, degrees
    double d_brg_in = 0.0;   // circular bearing differences, degrees
    double d_brg_out = 0.0;
    double dist = 0.0;       // metres
};

// Six-parameter planar affine map dst ≈ [a b; c d]·src + (t_x, t_y).
struct AffineFit {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
    double t_x = 0.0, t_y = 0.0;
    std::vector<double> residuals;  // per-point Euclidean misfit, metres
    double fit_error = 0.0;         // sqrt of summed squared residuals

    double det() const { return a * d - b * c; }
};

struct AccuracyReport {
    double mean_angle = 0.0;  // degrees
    double mean_brg1 = 0.0;
    double mean_brg2 = 0.0;
    double mean_dist = 0.0;  // metres
    int n_matches = 0;
};

// Inner angle at p2 between (p1−p2) and (p3−p2), degrees in [0, 180].
double inner_angle(const Point2& p1, const Point2& p2, const Point2& p3);

// Clockwise angle from grid north of the direction p1→p2, degrees in [0, 360).
double bearing(const Point2& p1, const Point2& p2);

// min(|Δ|, 360−|Δ|) of two bearings.
double circular_diff_deg(double a, double b);

// Signature of vertex `vertex` (0-based over distinct vertices) on a
// normalized CCW exterior ring.
VertexSignature vertex_signature(const Ring& exterior, std::size_t vertex);

// Five well-distributed control targets: the building vertex nearest each
// envelope corner plus the vertex nearest the centroid of the convex hull of
// all vertices. Raises insufficient-geometry when fewer than five distinct
// vertices exist.
std::array<Point2, 5> select_control_targets(const Layer& layer);

struct MatchOptions {
    double radius = 5.0;      // metres, candidate search distance
    double angle_tol = 15.0;  // degrees, signature acceptance tolerance
};

// For each target, finds the nearest dst vertex within radius whose
// signature deltas (theta, both bearings) all stay within angle_tol.
// Raises registration-impossible when fewer than three targets match.
std::vector<MatchedVertexPair> match_homologous(const Layer& src, const Layer& dst,
                                                const std::array<Point2, 5>& targets,
                                                const MatchOptions& opt = {});

// Least-squares fit of the affine parameters over matched pairs (Householder
// QR on the centered design). Raises singular-system for collinear sources.
AffineFit fit_affine(const std::vector<MatchedVertexPair>& pairs);

// Means of the absolute angle/bearing differences and distances.
AccuracyReport accuracy_report(const std::vector<MatchedVertexPair>& pairs);

Point2 apply_affine(const Point2& p, const AffineFit& t);

// Maps every vertex; raises singular-transform when |det| ≤ 1e-12.
Layer apply_affine(const Layer& layer, const AffineFit& t);

}  // namespace fpqa
