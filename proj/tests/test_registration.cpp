#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fpqa/errors.hpp"
#include "fpqa/registration.hpp"
#include "fpqa/rng.hpp"
#include "fpqa/synth.hpp"
#include "support/brute.hpp"
#include "support/gen.hpp"

using namespace fpqa;

TEST_CASE("inner_angle fixtures") {
    CHECK(inner_angle({0, 1}, {0, 0}, {1, 0}) == doctest::Approx(90.0).epsilon(1e-12));
    CHECK(inner_angle({0, 0}, {1, 0}, {2, 0}) == doctest::Approx(180.0).epsilon(1e-12));
    CHECK(inner_angle({1, 0}, {0, 0}, {1, 1}) == doctest::Approx(45.0).epsilon(1e-12));
    CHECK_THROWS_AS(inner_angle({0, 0}, {0, 0}, {1, 0}), Error);
}

TEST_CASE("bearing fixtures") {
    CHECK(bearing({0, 0}, {0, 1}) == doctest::Approx(0.0));
    CHECK(bearing({0, 0}, {1, 0}) == doctest::Approx(90.0));
    CHECK(bearing({0, 0}, {0, -1}) == doctest::Approx(180.0));
    CHECK(bearing({0, 0}, {-1, 0}) == doctest::Approx(270.0));
    CHECK_THROWS_AS(bearing({1, 1}, {1, 1}), Error);
}

TEST_CASE("bearing reversal property") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        Point2 p{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        Point2 q{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        if (p == q) continue;
        double fwd = bearing(p, q);
        double rev = bearing(q, p);
        double diff = std::fmod(rev - fwd + 720.0, 360.0);
        CHECK(diff == doctest::Approx(180.0).epsilon(1e-9));
    }
}

TEST_CASE("angles and bearings are translation invariant") {
    Rng rng(6);
    for (int i = 0; i < 100; ++i) {
        Point2 a{rng.uniform(0, 10), rng.uniform(0, 10)};
        Point2 b{rng.uniform(20, 30), rng.uniform(20, 30)};
        Point2 c{rng.uniform(40, 50), rng.uniform(0, 10)};
        double dx = rng.uniform(-1e5, 1e5), dy = rng.uniform(-1e5, 1e5);
        Point2 a2{a.x + dx, a.y + dy}, b2{b.x + dx, b.y + dy}, c2{c.x + dx, c.y + dy};
        CHECK(inner_angle(a, b, c) == doctest::Approx(inner_angle(a2, b2, c2)).epsilon(1e-6));
        CHECK(circular_diff_deg(bearing(a, b), bearing(a2, b2)) < 1e-6);
    }
}

TEST_CASE("convex polygon inner angles sum to (n-2)*180") {
    Rng rng(7);
    for (int k = 0; k < 100; ++k) {
        Polygon hull = gen::random_convex_polygon(rng, {rng.uniform(0, 100), rng.uniform(0, 100)},
                                                  rng.uniform(5, 40));
        const Ring& ring = hull.exterior;
        std::size_t m = ring.size() - 1;
        double sum = 0.0;
        for (std::size_t v = 0; v < m; ++v) {
            sum += vertex_signature(ring, v).theta;
        }
        CHECK(sum == doctest::Approx((static_cast<double>(m) - 2.0) * 180.0).epsilon(1e-9));
    }
}

TEST_CASE("select_control_targets on a 3x3 grid of squares") {
    std::vector<Polygon> polys;
    for (int gy = 0; gy < 3; ++gy) {
        for (int gx = 0; gx < 3; ++gx) {
            polys.push_back(gen::square(gx * 100.0, gy * 100.0, 10.0));
        }
    }
    Layer layer = gen::make_layer(polys);
    std::array<Point2, 5> targets = select_control_targets(layer);

    // brute-force: nearest vertex to each envelope corner
    Envelope env = layer_envelope(layer);
    CHECK(targets[0] == Point2{0.0, 0.0});        // nearest to (0, 0)
    CHECK(targets[1] == Point2{210.0, 0.0});      // nearest to (210, 0)
    CHECK(targets[2] == Point2{210.0, 210.0});    // nearest to (210, 210)
    CHECK(targets[3] == Point2{0.0, 210.0});      // nearest to (0, 210)
    // fifth: nearest vertex to the hull centroid (105, 105) is a corner of
    // the center square at (100,100)..(110,110)
    CHECK(env.max_x == 210.0);
    bool is_center_square_corner =
        (targets[4].x == 100.0 || targets[4].x == 110.0) &&
        (targets[4].y == 100.0 || targets[4].y == 110.0);
    CHECK(is_center_square_corner);
}

TEST_CASE("select_control_targets needs 5 distinct vertices") {
    Layer one_triangle = gen::make_layer({[] {
        Polygon p;
        p.exterior = {{0, 0}, {10, 0}, {0, 10}, {0, 0}};
        return p;
    }()});
    CHECK_THROWS_AS(select_control_targets(one_triangle), Error);

    // a single rectangle covering the envelope: its 4 corners + any fifth
    Layer one_pentagon = gen::make_layer({[] {
        Polygon p;
        p.exterior = {{0, 0}, {10, 0}, {10, 10}, {5, 14}, {0, 10}, {0, 0}};
        return p;
    }()});
    std::array<Point2, 5> targets = select_control_targets(one_pentagon);
    CHECK(targets[0] == Point2{0.0, 0.0});
    CHECK(targets[1] == Point2{10.0, 0.0});
}

TEST_CASE("match_homologous on identical layers") {
    std::vector<Polygon> polys;
    for (int i = 0; i < 9; ++i) polys.push_back(gen::square((i % 3) * 50.0, (i / 3) * 50.0, 12.0));
    Layer src = gen::make_layer(polys, Source::OBD);
    Layer dst = gen::make_layer(polys, Source::REF);
    std::array<Point2, 5> targets = select_control_targets(src);
    std::vector<MatchedVertexPair> pairs = match_homologous(src, dst, targets);
    REQUIRE(pairs.size() == 5);
    for (const MatchedVertexPair& p : pairs) {
        CHECK(p.dist == 0.0);
        CHECK(p.d_theta == 0.0);
        CHECK(p.d_brg_in == 0.0);
        CHECK(p.d_brg_out == 0.0);
    }
}

TEST_CASE("match_homologous on a 1 m east translation") {
    std::vector<Polygon> polys;
    for (int i = 0; i < 9; ++i) polys.push_back(gen::square((i % 3) * 60.0, (i / 3) * 60.0, 15.0));
    Layer src = gen::make_layer(polys, Source::OBD);
    std::vector<Polygon> moved;
    for (const Polygon& p : polys) {
        Polygon q = p;
        for (Point2& v : q.exterior) v.x += 1.0;
        moved.push_back(q);
    }
    Layer dst = gen::make_layer(moved, Source::REF);
    std::vector<MatchedVertexPair> pairs =
        match_homologous(src, dst, select_control_targets(src));
    REQUIRE(pairs.size() == 5);
    for (const MatchedVertexPair& p : pairs) {
        CHECK(p.dist == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.d_theta == doctest::Approx(0.0));
        CHECK(p.d_brg_in == doctest::Approx(0.0));
        CHECK(p.d_brg_out == doctest::Approx(0.0));
    }
}

TEST_CASE("30 degree rotation defeats the 15 degree tolerance") {
    SceneConfig cfg;
    cfg.n_buildings = 40;
    cfg.area_bounds = {0, 0, 500, 500};
    cfg.rotation_deg = 30.0;
    cfg.seed = 88;
    Scene scene = generate_scene(cfg);
    std::array<Point2, 5> targets = select_control_targets(scene.ref);
    CHECK_THROWS_AS(match_homologous(scene.ref, scene.obd, targets, {5.0, 15.0}), Error);
}

TEST_CASE("fit_affine recovers an exact translation") {
    std::vector<MatchedVertexPair> pairs;
    Rng rng(9);
    for (int i = 0; i < 5; ++i) {
        Point2 s{rng.uniform(0, 100), rng.uniform(0, 100)};
        pairs.push_back({s, {s.x + 2.0, s.y + 3.0}, 0, 0, 0, 3.605551275});
    }
    AffineFit fit = fit_affine(pairs);
    CHECK(fit.a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.b == doctest::Approx(0.0));
    CHECK(std::abs(fit.b) < 1e-12);
    CHECK(std::abs(fit.c) < 1e-12);
    CHECK(fit.d == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.t_x == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.t_y == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.fit_error <= 1e-9);
}

TEST_CASE("fit_affine recovers an exact 90 degree rotation") {
    std::vector<MatchedVertexPair> pairs;
    Rng rng(10);
    for (int i = 0; i < 5; ++i) {
        Point2 s{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        pairs.push_back({s, {-s.y, s.x}, 0, 0, 0, 0});
    }
    AffineFit fit = fit_affine(pairs);
    CHECK(std::abs(fit.a) < 1e-12);
    CHECK(fit.b == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(fit.d) < 1e-12);
    CHECK(std::abs(fit.t_x) < 1e-9);
    CHECK(std::abs(fit.t_y) < 1e-9);
    CHECK(fit.fit_error <= 1e-9);
}

TEST_CASE("three noise-free pairs interpolate exactly") {
    std::vector<MatchedVertexPair> pairs = {
        {{0, 0}, {1, 2}, 0, 0, 0, 0},
        {{10, 0}, {11.5, 2.2}, 0, 0, 0, 0},
        {{0, 10}, {0.8, 12.9}, 0, 0, 0, 0},
    };
    AffineFit fit = fit_affine(pairs);
    CHECK(fit.fit_error <= 1e-9);
    for (double r : fit.residuals) CHECK(r <= 1e-9);
}

TEST_CASE("collinear sources raise singular-system") {
    std::vector<MatchedVertexPair> pairs = {
        {{0, 0}, {0, 0}, 0, 0, 0, 0},
        {{1, 1}, {1, 1}, 0, 0, 0, 0},
        {{2, 2}, {2, 2}, 0, 0, 0, 0},
        {{3, 3}, {3, 3}, 0, 0, 0, 0},
    };
    CHECK_THROWS_AS(fit_affine(pairs), Error);
    CHECK_THROWS_AS(fit_affine({}), Error);
}

TEST_CASE("noisy fit agrees with the normal-equations oracle") {
    Rng rng(11);
    const double sigma = 0.1;
    AffineFit truth;
    truth.a = 1.01;
    truth.b = -0.02;
    truth.c = 0.015;
    truth.d = 0.99;
    truth.t_x = 2.0;
    truth.t_y = -1.5;

    int all_within = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        std::vector<MatchedVertexPair> pairs;
        for (int i = 0; i < 50; ++i) {
            Point2 src{rng.uniform(0, 200), rng.uniform(0, 200)};
            Point2 dst = apply_affine(src, truth);
            dst.x += rng.normal(0.0, sigma);
            dst.y += rng.normal(0.0, sigma);
            pairs.push_back({src, dst, 0, 0, 0, 0});
        }
        AffineFit fit = fit_affine(pairs);
        oracle::NormalEqFit ne = oracle::normal_equations_fit(pairs, sigma);
        REQUIRE(ne.ok);

        // both solvers agree on the minimizer
        CHECK(std::abs(fit.a - ne.a) < 1e-8);
        CHECK(std::abs(fit.b - ne.b) < 1e-8);
        CHECK(std::abs(fit.c - ne.c) < 1e-8);
        CHECK(std::abs(fit.d - ne.d) < 1e-8);
        CHECK(std::abs(fit.t_x - ne.t_x) < 1e-6);
        CHECK(std::abs(fit.t_y - ne.t_y) < 1e-6);

        bool ok = std::abs(fit.a - truth.a) <= 3 * ne.se[0] &&
                  std::abs(fit.b - truth.b) <= 3 * ne.se[1] &&
                  std::abs(fit.t_x - truth.t_x) <= 3 * ne.se[2] &&
                  std::abs(fit.c - truth.c) <= 3 * ne.se[3] &&
                  std::abs(fit.d - truth.d) <= 3 * ne.se[4] &&
                  std::abs(fit.t_y - truth.t_y) <= 3 * ne.se[5];
        if (ok) ++all_within;

        // residual vector is orthogonal to the design columns
        double dot_x = 0.0, dot_y = 0.0, dot_1 = 0.0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            Point2 mapped = apply_affine(pairs[i].src, fit);
            double rx = pairs[i].dst.x - mapped.x;
            dot_x += rx * pairs[i].src.x;
            dot_y += rx * pairs[i].src.y;
            dot_1 += rx;
        }
        double scale = 0.0;
        for (const MatchedVertexPair& p : pairs) scale += p.src.x * p.src.x;
        CHECK(std::abs(dot_x) / std::max(scale, 1.0) < 1e-8);
        CHECK(std::abs(dot_y) / std::max(scale, 1.0) < 1e-8);
        CHECK(std::abs(dot_1) / 50.0 < 1e-8);
    }
    CHECK(all_within >= 95);
}

TEST_CASE("fit_error equals the root of summed squared residuals") {
    Rng rng(12);
    std::vector<MatchedVertexPair> pairs;
    for (int i = 0; i < 20; ++i) {
        Point2 s{rng.uniform(0, 100), rng.uniform(0, 100)};
        Point2 d{s.x + rng.normal(0, 0.5), s.y + rng.normal(0, 0.5)};
        pairs.push_back({s, d, 0, 0, 0, 0});
    }
    AffineFit fit = fit_affine(pairs);
    double ss = 0.0;
    for (double r : fit.residuals) ss += r * r;
    CHECK(fit.fit_error == doctest::Approx(std::sqrt(ss)).epsilon(1e-12));
}

TEST_CASE("translation invariance of the linear part") {
    Rng rng(13);
    std::vector<MatchedVertexPair> pairs;
    for (int i = 0; i < 12; ++i) {
        Point2 s{rng.uniform(0, 100), rng.uniform(0, 100)};
        Point2 d{1.02 * s.x - 0.03 * s.y + 4.0 + rng.normal(0, 0.05),
                 0.01 * s.x + 0.98 * s.y - 2.0 + rng.normal(0, 0.05)};
        pairs.push_back({s, d, 0, 0, 0, 0});
    }
    AffineFit base = fit_affine(pairs);

    const double shift = 5.0e5;  // a UTM-sized offset applied to both layers
    std::vector<MatchedVertexPair> shifted = pairs;
    for (MatchedVertexPair& p : shifted) {
        p.src.x += shift;
        p.src.y += shift;
        p.dst.x += shift;
        p.dst.y += shift;
    }
    AffineFit moved = fit_affine(shifted);
    CHECK(moved.a == doctest::Approx(base.a).epsilon(1e-9));
    CHECK(moved.b == doctest::Approx(base.b).epsilon(1e-9));
    CHECK(moved.c == doctest::Approx(base.c).epsilon(1e-9));
    CHECK(moved.d == doctest::Approx(base.d).epsilon(1e-9));
    CHECK(moved.fit_error == doctest::Approx(base.fit_error).epsilon(1e-6));
}

TEST_CASE("accuracy_report fixtures") {
    std::vector<MatchedVertexPair> pairs = {
        {{0, 0}, {0, 0}, 0.5, 1.0, 2.0, 1.0},
        {{1, 1}, {1, 1}, 1.5, 3.0, 4.0, 3.0},
    };
    AccuracyReport r = accuracy_report(pairs);
    CHECK(r.mean_dist == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.mean_angle == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.mean_brg1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.mean_brg2 == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(r.n_matches == 2);
    CHECK_THROWS_AS(accuracy_report({}), Error);
}

TEST_CASE("apply_affine on layers") {
    Layer layer = gen::make_layer({gen::square(0, 0, 10), gen::square(50, 50, 10)});
    AffineFit identity;
    Layer same = apply_affine(layer, identity);
    CHECK(same.footprints[0].geometry.exterior == layer.footprints[0].geometry.exterior);

    AffineFit move;
    move.t_x = 1.0;
    Layer moved = apply_affine(layer, move);
    CHECK(centroid(moved.footprints[0].geometry).x ==
          doctest::Approx(centroid(layer.footprints[0].geometry).x + 1.0).epsilon(1e-12));

    AffineFit singular;
    singular.a = 1.0;
    singular.b = 2.0;
    singular.c = 0.5;
    singular.d = 1.0;  // det = 0
    CHECK_THROWS_AS(apply_affine(layer, singular), Error);
}

TEST_CASE("affine composition matches matrix algebra") {
    AffineFit f1;
    f1.a = 1.1;
    f1.b = 0.1;
    f1.c = -0.05;
    f1.d = 0.95;
    f1.t_x = 3.0;
    f1.t_y = -2.0;
    AffineFit f2;
    f2.a = 0.9;
    f2.b = -0.2;
    f2.c = 0.15;
    f2.d = 1.05;
    f2.t_x = -1.0;
    f2.t_y = 4.0;

    // composed = f2 ∘ f1
    AffineFit composed;
    composed.a = f2.a * f1.a + f2.b * f1.c;
    composed.b = f2.a * f1.b + f2.b * f1.d;
    composed.c = f2.c * f1.a + f2.d * f1.c;
    composed.d = f2.c * f1.b + f2.d * f1.d;
    composed.t_x = f2.a * f1.t_x + f2.b * f1.t_y + f2.t_x;
    composed.t_y = f2.c * f1.t_x + f2.d * f1.t_y + f2.t_y;

    Layer layer = gen::make_layer({gen::square(5, 5, 20)});
    Layer two_steps = apply_affine(apply_affine(layer, f1), f2);
    Layer one_step = apply_affine(layer, composed);
    const Ring& a = two_steps.footprints[0].geometry.exterior;
    const Ring& b = one_step.footprints[0].geometry.exterior;
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == doctest::Approx(b[i].x).epsilon(1e-9));
        CHECK(a[i].y == doctest::Approx(b[i].y).epsilon(1e-9));
    }
}

TEST_CASE("round trip: fit recovers a rigid transform applied to a layer") {
    SceneConfig cfg;
    cfg.n_buildings = 60;
    cfg.area_bounds = {0, 0, 600, 600};
    cfg.seed = 1001;
    Scene scene = generate_scene(cfg);

    // small rotation (2 deg) about the scene center plus a translation, so
    // every vertex stays within the match radius of its counterpart
    AffineFit t;
    double rad = 2.0 * 3.14159265358979323846 / 180.0;
    const Point2 center{300.0, 300.0};
    t.a = std::cos(rad);
    t.b = -std::sin(rad);
    t.c = std::sin(rad);
    t.d = std::cos(rad);
    t.t_x = center.x - (t.a * center.x + t.b * center.y) + 2.0;
    t.t_y = center.y - (t.c * center.x + t.d * center.y) + 1.0;
    Layer moved = apply_affine(scene.ref, t);

    std::array<Point2, 5> targets = select_control_targets(scene.ref);
    std::vector<MatchedVertexPair> pairs =
        match_homologous(scene.ref, moved, {targets}, {20.0, 15.0});
    REQUIRE(pairs.size() >= 3);
    AffineFit fit = fit_affine(pairs);
    CHECK(std::abs(fit.a - t.a) < 1e-6);
    CHECK(std::abs(fit.b - t.b) < 1e-6);
    CHECK(std::abs(fit.c - t.c) < 1e-6);
    CHECK(std::abs(fit.d - t.d) < 1e-6);
    CHECK(std::abs(fit.t_x - t.t_x) < 1e-3);
    CHECK(std::abs(fit.t_y - t.t_y) < 1e-3);
}
