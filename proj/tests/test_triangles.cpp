#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slapmap/ergodic.hpp"
#include "slapmap/triangles.hpp"

using namespace slapmap;

TEST_CASE("angle validation") {
    CHECK_THROWS_AS(triangle_spec(-0.1, 1.0), InvalidAngles);
    CHECK_THROWS_AS(triangle_spec(1.6, 1.6), InvalidAngles);
    CHECK_THROWS_AS(triangle_spec(0.0, 1.0), InvalidAngles);
}

TEST_CASE("angles sum to pi and the longest side is flagged") {
    TriangleSpec s = triangle_spec(0.5, 0.7);
    CHECK(s.angles[0] + s.angles[1] + s.angles[2] ==
          doctest::Approx(M_PI).epsilon(1e-15));
    // the longest side is opposite the largest angle
    int largest = 0;
    for (int i = 1; i < 3; ++i)
        if (s.angles[i] > s.angles[largest]) largest = i;
    CHECK(s.longest_side_index == largest);
}

TEST_CASE("classification by the largest angle") {
    CHECK(classify(triangle_spec(1.0, 1.1)) == TriangleClass::acute);
    CHECK(classify(triangle_spec(M_PI / 2, 0.6)) == TriangleClass::right);
    CHECK(classify(triangle_spec(0.4, 0.5)) == TriangleClass::obtuse);
    CHECK(classify(triangle_spec(M_PI / 3, M_PI / 3)) == TriangleClass::acute);
}

TEST_CASE("predictions follow the class") {
    CHECK(predict_triangle(triangle_spec(1.0, 1.1)).parity == MixingParity::one);
    CHECK(predict_triangle(triangle_spec(M_PI / 2, 0.6)).parity == MixingParity::two);
    CHECK(predict_triangle(triangle_spec(0.4, 0.5)).parity == MixingParity::even);
    CHECK(predict_triangle(triangle_spec(0.4, 0.5)).ergodic_count == 1);
}

TEST_CASE("construction respects the law of sines") {
    double a1 = 0.6, a2 = 0.9;
    Polygon T = triangle_from_angles(a1, a2, 2.0);
    REQUIRE(T.sides() == 3);
    TriangleSpec s = triangle_spec(a1, a2);
    CHECK(T.side_length(s.longest_side_index) == doctest::Approx(2.0).epsilon(1e-13));
    // side i / sin(angle opposite i) constant
    double ratio = T.side_length(0) / std::sin(s.angles[0]);
    for (int i = 1; i < 3; ++i)
        CHECK(T.side_length(i) / std::sin(s.angles[i]) ==
              doctest::Approx(ratio).epsilon(1e-12));
}

TEST_CASE("second iterate keeps the long side and the leg union invariant") {
    CHECK(check_second_iterate_invariance(triangle_from_angles(M_PI / 2, 0.6)));
    CHECK(check_second_iterate_invariance(triangle_from_angles(0.4, 0.5)));
    CHECK(check_second_iterate_invariance(triangle_from_angles(1.9, 0.7)));
}

TEST_CASE("measured mixing structure per class") {
    auto run = [](double a1, double a2) {
        AnalyzeOptions opts;
        opts.compute_density = false;
        Polygon T = triangle_from_angles(a1, a2);
        int n = static_cast<int>(3000 * T.perimeter());
        return analyze(extract_slap_map(T), n, opts);
    };
    ErgodicReport acute = run(1.0, 1.1);
    REQUIRE(acute.components.size() == 1);
    CHECK(acute.components[0].period == 1);
    CHECK(acute.refinement_stable);

    ErgodicReport right = run(M_PI / 2, 0.6);
    REQUIRE(right.components.size() == 1);
    CHECK(right.components[0].period == 2);

    ErgodicReport obtuse = run(2.0, 0.5);
    REQUIRE(obtuse.components.size() == 1);
    CHECK(obtuse.components[0].period % 2 == 0);
}
