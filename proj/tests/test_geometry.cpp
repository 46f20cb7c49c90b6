#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fpqa/clip.hpp"
#include "fpqa/errors.hpp"
#include "fpqa/geometry.hpp"
#include "fpqa/rng.hpp"
#include "support/gen.hpp"
#include "support/raster_oracle.hpp"

using namespace fpqa;

namespace {

Polygon unit_square() { return gen::square(0.0, 0.0, 1.0); }

}  // namespace

TEST_CASE("polygon_area fixtures") {
    CHECK(polygon_area(normalize(unit_square())) == doctest::Approx(1.0).epsilon(1e-12));

    Polygon tri;
    tri.exterior = {{0, 0}, {1, 0}, {0, 1}, {0, 0}};
    CHECK(polygon_area(normalize(tri)) == doctest::Approx(0.5).epsilon(1e-12));

    Polygon collinear;
    collinear.exterior = {{0, 0}, {1, 1}, {2, 2}, {0, 0}};
    CHECK_THROWS_AS(normalize(collinear), Error);

    Polygon nan_poly;
    nan_poly.exterior = {{0, 0}, {1, 0}, {std::nan(""), 1}, {0, 0}};
    CHECK_THROWS_AS(polygon_area(nan_poly), Error);
}

TEST_CASE("holes reduce the area") {
    Polygon donut = gen::square(0.0, 0.0, 10.0);
    Ring hole = {{4, 4}, {6, 4}, {6, 6}, {4, 6}, {4, 4}};
    donut.holes.push_back(hole);
    donut = normalize(donut);
    CHECK(polygon_area(donut) == doctest::Approx(96.0).epsilon(1e-12));
    // hole winding was flipped to CW
    CHECK(signed_ring_area(donut.holes[0]) < 0.0);
}

TEST_CASE("intersection_area fixtures") {
    Polygon a = normalize(unit_square());
    CHECK(intersection_area(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    Polygon far_square = normalize(gen::square(5.0, 5.0, 1.0));
    CHECK(intersection_area(a, far_square) == 0.0);

    Polygon shifted = normalize(gen::square(0.5, 0.0, 1.0));
    CHECK(intersection_area(a, shifted) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(intersection_area(shifted, a) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("union_area fixtures") {
    Polygon a = normalize(unit_square());
    Polygon b = normalize(gen::square(5.0, 5.0, 1.0));
    Polygon half = normalize(gen::square(0.5, 0.0, 1.0));
    CHECK(union_area(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(union_area(a, b) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(union_area(a, half) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("intersection symmetry and bounds on random simple polygons") {
    Rng rng(101);
    for (int k = 0; k < 200; ++k) {
        Polygon a = gen::random_simple_polygon(rng, {rng.uniform(0, 50), rng.uniform(0, 50)}, 12.0);
        Polygon b = gen::random_simple_polygon(rng, {rng.uniform(0, 50), rng.uniform(0, 50)}, 12.0);
        double ab = intersection_area(a, b);
        double ba = intersection_area(b, a);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
        double min_area = std::min(polygon_area(a), polygon_area(b));
        CHECK(ab >= 0.0);
        CHECK(ab <= min_area * (1.0 + 1e-9) + 1e-12);
        double uni = union_area(a, b);
        CHECK(uni == doctest::Approx(polygon_area(a) + polygon_area(b) - ab).epsilon(1e-9));
    }
}

TEST_CASE("rectangle pairs match the closed form exactly") {
    Rng rng(202);
    for (int k = 0; k < 200; ++k) {
        gen::Rect ra = gen::random_rect(rng);
        gen::Rect rb = gen::random_rect(rng);
        double expected = gen::rect_overlap_area(ra, rb);
        double got = intersection_area(normalize(ra.polygon()), normalize(rb.polygon()));
        if (expected == 0.0) {
            CHECK(got <= 1e-12);
        } else {
            CHECK(got == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("random simple polygons match the rasterization oracle") {
    Rng rng(303);
    for (int k = 0; k < 60; ++k) {
        Point2 c1{rng.uniform(0, 30), rng.uniform(0, 30)};
        Point2 c2{c1.x + rng.uniform(-8, 8), c1.y + rng.uniform(-8, 8)};
        Polygon a = gen::random_simple_polygon(rng, c1, 10.0);
        Polygon b = gen::random_simple_polygon(rng, c2, 10.0);
        double got = intersection_area(a, b);
        double expected = oracle::intersection_area(a, b, 4096);
        double tol = 0.005 * std::min(polygon_area(a), polygon_area(b));
        CHECK(std::abs(got - expected) <= tol);
    }
}

TEST_CASE("intersection honors holes") {
    Polygon donut = gen::square(0.0, 0.0, 10.0);
    donut.holes.push_back({{2, 2}, {8, 2}, {8, 8}, {2, 8}, {2, 2}});
    donut = normalize(donut);
    Polygon probe = normalize(gen::square(3.0, 3.0, 2.0));  // entirely inside the hole
    CHECK(intersection_area(donut, probe) == doctest::Approx(0.0).epsilon(1e-12));

    Polygon straddle = normalize(gen::square(7.0, 4.0, 2.0));  // half in the hole
    CHECK(intersection_area(donut, straddle) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("convex_hull fixtures") {
    Polygon hull = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
    CHECK(polygon_area(hull) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hull.exterior.size() == 5);  // 4 corners, closed

    Polygon tri = convex_hull({{0, 0}, {2, 0}, {0, 2}});
    CHECK(polygon_area(tri) == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}}), Error);
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), Error);
}

TEST_CASE("convex_hull of 1000 random disc points") {
    Rng rng(404);
    std::vector<Point2> pts;
    for (int i = 0; i < 1000; ++i) {
        double a = rng.uniform(0.0, gen::kTau);
        double r = 40.0 * std::sqrt(rng.uniform());
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    Polygon hull = convex_hull(pts);
    const Ring& ring = hull.exterior;

    // convex: consistent turn sign at every vertex
    std::size_t m = ring.size() - 1;
    for (std::size_t i = 0; i < m; ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[(i + 1) % m];
        const Point2& c = ring[(i + 2) % m];
        double turn = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        CHECK(turn > 0.0);
    }

    // containment: every input point is left of (or on) every hull edge
    for (const Point2& p : pts) {
        for (std::size_t i = 0; i < m; ++i) {
            const Point2& a = ring[i];
            const Point2& b = ring[i + 1];
            double len = std::hypot(b.x - a.x, b.y - a.y);
            double signed_dist = ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)) / len;
            CHECK(signed_dist >= -1e-9);
        }
    }

    // every hull vertex is an input point
    for (std::size_t i = 0; i < m; ++i) {
        bool found = false;
        for (const Point2& p : pts) {
            if (p == ring[i]) {
                found = true;
                break;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("centroid fixtures") {
    Point2 c = centroid(normalize(unit_square()));
    CHECK(c.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.y == doctest::Approx(0.5).epsilon(1e-12));

    Polygon tri;
    tri.exterior = {{0, 0}, {3, 0}, {0, 3}, {0, 0}};
    Point2 tc = centroid(normalize(tri));
    CHECK(tc.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tc.y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("centroid of an L-shaped polygon matches the raster oracle") {
    Polygon ell;
    ell.exterior = {{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 2}, {0, 2}, {0, 0}};
    ell = normalize(ell);
    Point2 got = centroid(ell);
    Point2 expected = oracle::centroid(ell, 8192);
    CHECK(std::abs(got.x - expected.x) < 1e-3);
    CHECK(std::abs(got.y - expected.y) < 1e-3);
}

TEST_CASE("bounding_envelope fixtures") {
    Envelope e = bounding_envelope({normalize(unit_square())});
    CHECK(e.min_x == 0.0);
    CHECK(e.max_y == 1.0);

    Envelope two = bounding_envelope({normalize(unit_square()), normalize(gen::square(10, 10, 1))});
    CHECK(two.min_x == 0.0);
    CHECK(two.max_x == 11.0);
    CHECK(two.max_y == 11.0);

    CHECK_THROWS_AS(bounding_envelope({}), Error);
}

TEST_CASE("validate fixtures") {
    Polygon bowtie;
    bowtie.exterior = {{0, 0}, {2, 2}, {2, 0}, {0, 2}, {0, 0}};
    bool has_self = false;
    for (const Defect& d : validate(bowtie)) {
        if (d.kind == Defect::Kind::self_intersection) has_self = true;
    }
    CHECK(has_self);
    CHECK_FALSE(valid_for_analysis(bowtie));

    Polygon cw;
    cw.exterior = {{0, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 0}};  // clockwise
    bool has_winding = false;
    bool winding_fixable = false;
    for (const Defect& d : validate(cw)) {
        if (d.kind == Defect::Kind::wrong_winding) {
            has_winding = true;
            winding_fixable = d.fixable;
        }
    }
    CHECK(has_winding);
    CHECK(winding_fixable);
    CHECK(valid_for_analysis(cw));  // fixable only
    CHECK(signed_ring_area(normalize(cw).exterior) > 0.0);

    CHECK(validate(normalize(unit_square())).empty());
}

TEST_CASE("point_in_polygon honors boundaries and holes") {
    Polygon donut = gen::square(0.0, 0.0, 10.0);
    donut.holes.push_back({{4, 4}, {6, 4}, {6, 6}, {4, 6}, {4, 4}});
    donut = normalize(donut);
    CHECK(point_in_polygon({1, 1}, donut));
    CHECK(point_in_polygon({0, 0}, donut));        // exterior boundary
    CHECK(point_in_polygon({4, 5}, donut));        // hole boundary belongs to the polygon
    CHECK_FALSE(point_in_polygon({5, 5}, donut));  // inside the hole
    CHECK_FALSE(point_in_polygon({-1, 5}, donut));
}

TEST_CASE("polygons_intersect counts touching") {
    Polygon a = normalize(unit_square());
    Polygon touching = normalize(gen::square(1.0, 0.0, 1.0));  // shares an edge
    CHECK(polygons_intersect(a, touching));
    Polygon corner = normalize(gen::square(1.0, 1.0, 1.0));  // shares a corner
    CHECK(polygons_intersect(a, corner));
    Polygon apart = normalize(gen::square(3.0, 3.0, 1.0));
    CHECK_FALSE(polygons_intersect(a, apart));
}

TEST_CASE("normalization snaps near-duplicate vertices") {
    Polygon p;
    p.exterior = {{0, 0}, {1, 0}, {1.0 + 1e-13, 1e-13}, {1, 1}, {0, 1}, {0, 0}};
    Polygon n = normalize(p);
    CHECK(n.exterior.size() == 5);  // 4 distinct + closure
    CHECK(polygon_area(n) == doctest::Approx(1.0).epsilon(1e-9));
}
