#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slapmap/geometry.hpp"
#include "slapmap/triangles.hpp"

using namespace slapmap;

namespace {

Polygon equilateral() {
    return build_polygon({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
}

}  // namespace

TEST_CASE("polygon validation") {
    CHECK_THROWS_AS(build_polygon({{0, 0}, {1, 0}}), InvalidArity);
    CHECK_THROWS_AS(build_polygon({{0, 0}, {1, 0}, {2, 0}}), Degenerate);
    CHECK_THROWS_AS(build_polygon({{0, 0}, {1, 0}, {1, 0.5}, {0.5, -0.5}}),
                    SelfIntersecting);
    CHECK_THROWS_AS(build_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0.5}}),
                    Degenerate);
}

TEST_CASE("orientation is normalized to counterclockwise") {
    Polygon cw = build_polygon({{0, 0}, {0.5, std::sqrt(3.0) / 2}, {1, 0}});
    double area2 = 0.0;
    for (int i = 0; i < cw.sides(); ++i)
        area2 += cross(cw.vertex(i), cw.vertex(i + 1));
    CHECK(area2 > 0.0);
    CHECK(cw.vertices()[0].x == 0.0);
    CHECK(cw.vertices()[0].y == 0.0);
}

TEST_CASE("arc length bookkeeping") {
    Polygon P = equilateral();
    CHECK(P.sides() == 3);
    CHECK(P.perimeter() == doctest::Approx(3.0).epsilon(1e-15));
    for (int i = 0; i < 3; ++i)
        CHECK(P.side_length(i) == doctest::Approx(1.0).epsilon(1e-15));

    BoundaryPoint b = P.boundary_point(1.25);
    CHECK(b.side == 1);
    Point2 p = P.point_at(b);
    Point2 expect = P.vertex(1) + 0.25 * P.side_dir(1);
    CHECK(p.x == doctest::Approx(expect.x).epsilon(1e-14));
    CHECK(p.y == doctest::Approx(expect.y).epsilon(1e-14));

    CHECK_THROWS_AS(P.boundary_point(1.0), AtVertex);
    CHECK(P.vertex_distance(1.3) == doctest::Approx(0.3));
    CHECK(P.vertex_distance(2.9) == doctest::Approx(0.1));
}

TEST_CASE("inward normals point into the polygon") {
    Polygon P = equilateral();
    Point2 centroid{0.5, std::sqrt(3.0) / 6};
    for (int i = 0; i < P.sides(); ++i) {
        Point2 mid = P.vertex(i) + 0.5 * P.side_dir(i);
        CHECK(dot(P.inward_normal(i), centroid - mid) > 0.0);
        CHECK(std::abs(dot(P.inward_normal(i), P.side_dir(i))) < 1e-15);
    }
}

TEST_CASE("regular polygons have unit sides") {
    for (int d : {3, 5, 7, 12}) {
        Polygon P = regular_polygon(d);
        CHECK(P.sides() == d);
        CHECK(P.perimeter() == doctest::Approx(static_cast<double>(d)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(regular_polygon(2), InvalidArity);
}

TEST_CASE("parallel facing detection") {
    CHECK(has_parallel_facing(build_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})));
    CHECK(has_parallel_facing(regular_polygon(6)));
    CHECK_FALSE(has_parallel_facing(equilateral()));
    CHECK_FALSE(has_parallel_facing(regular_polygon(5)));
}

TEST_CASE("slap projection lands on the boundary along the inward normal") {
    Polygon P = equilateral();
    BoundaryPoint from{0.3, 0};
    BoundaryPoint to = slap_project(P, from);
    CHECK(to.side != from.side);
    Point2 a = P.point_at(from);
    Point2 b = P.point_at(to);
    Point2 nrm = P.inward_normal(from.side);
    CHECK(std::abs(cross(nrm, b - a)) < 1e-12);
    CHECK(dot(nrm, b - a) > 0.0);
}

TEST_CASE("normal ray through a vertex is rejected") {
    // the normal from the midpoint of a side of the equilateral triangle
    // passes through the opposite vertex
    Polygon P = equilateral();
    CHECK_THROWS_AS(slap_project(P, BoundaryPoint{0.5, 0}), VertexHit);
}

TEST_CASE("extracted slap map agrees with pointwise projection") {
    Polygon P = triangle_from_angles(1.0, 1.1);
    PiecewiseAffineMap psi = extract_slap_map(P);
    CHECK(psi.domain_lo() == 0.0);
    CHECK(psi.domain_hi() == doctest::Approx(P.perimeter()).epsilon(1e-15));
    CHECK(psi.expanding());
    for (const auto& br : psi.branches()) {
        double mid = 0.5 * (br.lo + br.hi);
        BoundaryPoint hit = slap_project(P, P.boundary_point(mid));
        CHECK(psi.eval(mid, Side::right) == doctest::Approx(hit.s).epsilon(1e-12));
        // branch slope is the secant of the angle between the two sides
        CHECK(std::abs(br.slope) > 1.0);
    }
}

TEST_CASE("square slap map is rejected as non-expanding") {
    Polygon P = build_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK_THROWS_AS(extract_slap_map(P), NotExpanding);
}

TEST_CASE("kite polygon") {
    Polygon K = kite_polygon(1.0212641074975735, 0.5207195027145912);
    CHECK(K.sides() == 4);
    CHECK(kite_edge_labels().size() == 4);
    // mirror symmetry: the two side-length pairs match
    auto len = K.side_lengths();
    CHECK((std::abs(len[0] - len[3]) < 1e-12 || std::abs(len[0] - len[1]) < 1e-12));
    CHECK_THROWS_AS(kite_polygon(0.3, 0.5), OutOfFamily);
    CHECK_THROWS_AS(kite_polygon(1.2, 0.9), OutOfFamily);
}

TEST_CASE("polygon json roundtrip") {
    Polygon P = triangle_from_angles(0.7, 0.9);
    Polygon Q = polygon_from_json(polygon_to_json(P));
    REQUIRE(Q.sides() == P.sides());
    for (int i = 0; i < P.sides(); ++i) {
        CHECK(Q.vertex(i).x == P.vertex(i).x);
        CHECK(Q.vertex(i).y == P.vertex(i).y);
    }
}
