#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slapmap/pwamap.hpp"

using namespace slapmap;

namespace {

PiecewiseAffineMap doubling() {
    return {0.0, 1.0, {{0.0, 0.5, 2.0, 0.0}, {0.5, 1.0, 2.0, -1.0}}};
}

PiecewiseAffineMap tent3() {
    // x -> 3x on [0,1/3], 2-3x on [1/3,2/3], 3x-2 on [2/3,1]
    return {0.0, 1.0,
            {{0.0, 1.0 / 3, 3.0, 0.0},
             {1.0 / 3, 2.0 / 3, -3.0, 2.0},
             {2.0 / 3, 1.0, 3.0, -2.0}}};
}

}  // namespace

TEST_CASE("branch arithmetic") {
    AffineBranch b{0.25, 0.75, -2.0, 1.5};
    CHECK(b.at(0.5) == 0.5);
    CHECK(b.image_lo() == b.at(0.75));
    CHECK(b.image_hi() == b.at(0.25));
    CHECK(b.inverse_at(b.at(0.4)) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("construction validates the branch tiling") {
    CHECK_THROWS_AS(PiecewiseAffineMap(0.0, 1.0, {}), Error);
    CHECK_THROWS_AS(
        PiecewiseAffineMap(0.0, 1.0, {{0.0, 0.4, 2.0, 0.0}, {0.6, 1.0, 2.0, -1.0}}),
        Error);
}

TEST_CASE("evaluation takes one-sided limits at breakpoints") {
    PiecewiseAffineMap f = doubling();
    CHECK(f.eval(0.5, Side::left) == doctest::Approx(1.0));
    CHECK(f.eval(0.5, Side::right) == doctest::Approx(0.0));
    CHECK(f.branch_index(0.5, Side::left) == 0);
    CHECK(f.branch_index(0.5, Side::right) == 1);
    CHECK(f.breakpoints() == std::vector<double>{0.5});
    CHECK(f.min_expansion() == doctest::Approx(2.0));
    CHECK(f.expanding());
    CHECK_THROWS_AS(f.eval(1.5, Side::left), OutOfDomain);
}

TEST_CASE("orbit iteration flips the side through decreasing branches") {
    PiecewiseAffineMap f = tent3();
    Orbit o = iterate(f, 0.4, Side::right, 3);
    REQUIRE(o.points.size() == 4);
    CHECK_FALSE(o.truncated);
    CHECK(o.points[0].branch == 1);
    CHECK(o.points[1].side == Side::left);  // branch 1 reverses orientation
    CHECK(o.points[1].x == doctest::Approx(0.8));
    CHECK(o.points.back().branch == -1);
}

TEST_CASE("composition matches pointwise evaluation") {
    PiecewiseAffineMap f = doubling();
    PiecewiseAffineMap g = tent3();
    PiecewiseAffineMap gf = compose(g, f);
    for (double x : {0.02, 0.11, 0.27, 0.43, 0.61, 0.77, 0.93}) {
        double direct = g.eval(f.eval(x, Side::right), Side::right);
        CHECK(gf.eval(x, Side::right) == doctest::Approx(direct).epsilon(1e-13));
    }
    PiecewiseAffineMap f2 = map_power(doubling(), 2);
    CHECK(f2.branches().size() == 4);
    CHECK(f2.eval(0.3, Side::right) == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("compose_along follows an itinerary") {
    PiecewiseAffineMap f = doubling();
    AffineBranch b = compose_along(f, {0, 1});
    CHECK(b.slope == doctest::Approx(4.0));
    CHECK(b.lo == doctest::Approx(0.25));
    CHECK(b.hi == doctest::Approx(0.5));
    // a branch whose image avoids its own domain kills the itinerary 0,0
    PiecewiseAffineMap gap{
        0.0, 1.0, {{0.0, 0.25, 1.2, 0.5}, {0.25, 1.0, 1.2, -0.3}}};
    CHECK_THROWS_AS(compose_along(gap, {0, 0}), EmptyDomain);
}

TEST_CASE("restriction rescales an invariant interval onto the unit interval") {
    // f(x) = 1.5(x - 1/2) mod 1 leaves [1/4, 3/4] invariant under f^2? use
    // the tent: [1/3, 2/3] is not invariant, [0,1] trivially is
    PiecewiseAffineMap f = tent3();
    PiecewiseAffineMap r = restrict_and_rescale(f, 0.0, 1.0);
    CHECK(r.domain_lo() == 0.0);
    CHECK(r.domain_hi() == 1.0);
    CHECK_THROWS_AS(restrict_and_rescale(f, 0.3, 0.5), NotInvariant);
}

TEST_CASE("lorenz shape recognition") {
    PiecewiseAffineMap lorenz{
        0.0, 1.0, {{0.0, 0.5, 1.6, 0.2}, {0.5, 1.0, 1.6, -0.8}}};
    CHECK(is_lorenz(lorenz));
    CHECK(is_lorenz(doubling()));  // left limit 1, right limit 0 at 1/2
    CHECK_FALSE(is_lorenz(tent3()));
    PiecewiseAffineMap offset{
        0.0, 1.0, {{0.0, 0.5, 1.6, 0.1}, {0.5, 1.0, 1.6, -0.8}}};
    CHECK_FALSE(is_lorenz(offset));
}

TEST_CASE("json roundtrip and digest determinism") {
    PiecewiseAffineMap f = tent3();
    PiecewiseAffineMap g = map_from_json(map_to_json(f));
    REQUIRE(g.branches().size() == f.branches().size());
    for (std::size_t i = 0; i < f.branches().size(); ++i) {
        CHECK(g.branches()[i].slope == f.branches()[i].slope);
        CHECK(g.branches()[i].intercept == f.branches()[i].intercept);
    }
    CHECK(f.digest() == g.digest());
    CHECK(f.digest() != doubling().digest());
}

TEST_CASE("csv sampling has one row per sample") {
    std::string csv = sample_csv(doubling(), 8);
    int rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows >= 8);
    CHECK(csv.find("x,") == 0);
}
