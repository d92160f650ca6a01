#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slapmap/lorenz.hpp"

using namespace slapmap;

TEST_CASE("slope classification") {
    CHECK(m_of_slope(2.0) == 0);
    CHECK(m_of_slope(1.5) == 0);
    CHECK(m_of_slope(std::sqrt(2.0)) == 1);
    CHECK(m_of_slope(1.3) == 1);
    CHECK(m_of_slope(1.1) == 2);
    CHECK_THROWS_AS(m_of_slope(1.0), OutOfRange);
    CHECK_THROWS_AS(m_of_slope(2.5), OutOfRange);
}

TEST_CASE("polygon slope classification agrees with the secant") {
    for (int d : {3, 5, 7, 9, 11, 13}) {
        CHECK(m_of_polygon(d) == m_of_slope(1.0 / std::cos(M_PI / d)));
    }
    CHECK(m_of_polygon(3) == 0);
    CHECK(m_of_polygon(5) == 1);
    CHECK(m_of_polygon(7) == 2);
    CHECK(m_of_polygon(9) == 3);
    CHECK(m_of_polygon(11) == 4);
    CHECK_THROWS_AS(m_of_polygon(4), EvenArity);
}

TEST_CASE("the two-branch family evaluates as a(x - 1/2) mod 1") {
    double a = 1.7;
    PiecewiseAffineMap f = centrally_symmetric_map(a);
    CHECK(f.branches().size() == 2);
    CHECK(is_lorenz(f));
    for (double x : {0.1, 0.3, 0.6, 0.9}) {
        double y = a * (x - 0.5);
        y -= std::floor(y);
        CHECK(f.eval(x, x < 0.5 ? Side::left : Side::right) ==
              doctest::Approx(y).epsilon(1e-13));
    }
    // central symmetry f(1-x) = 1 - f(x)
    for (double x : {0.12, 0.34, 0.77}) {
        CHECK(f.eval(1.0 - x, Side::left) ==
              doctest::Approx(1.0 - f.eval(x, Side::right)).epsilon(1e-13));
    }
}

TEST_CASE("golden slope tower has one level at the exact interval") {
    double a = std::sqrt(5.0) - 1.0;  // 1/cos(pi/5)
    LorenzAnalysis t = renormalization_tower(a);
    CHECK(t.m == 1);
    REQUIRE(t.intervals.size() == 2);
    double e = (3.0 - std::sqrt(5.0)) / 2.0;
    CHECK(t.intervals[0].first == 0.0);
    CHECK(t.intervals[0].second == 1.0);
    CHECK(t.intervals[1].first == doctest::Approx(e).epsilon(1e-12));
    CHECK(t.intervals[1].second == doctest::Approx(1.0 - e).epsilon(1e-12));
}

TEST_CASE("towers are nested and centrally symmetric") {
    for (int d : {7, 9, 11}) {
        double a = 1.0 / std::cos(M_PI / d);
        LorenzAnalysis t = renormalization_tower(a);
        CHECK(t.m == m_of_polygon(d));
        REQUIRE(static_cast<int>(t.intervals.size()) == t.m + 1);
        for (std::size_t k = 1; k < t.intervals.size(); ++k) {
            auto [lo, hi] = t.intervals[k];
            auto [plo, phi] = t.intervals[k - 1];
            CHECK(lo > plo);
            CHECK(hi < phi);
            CHECK(lo + hi == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("mixing component count is 2^m") {
    CHECK(predicted_mixing_components(2.0) == 1);
    CHECK(predicted_mixing_components(std::sqrt(5.0) - 1.0) == 2);
    CHECK(predicted_mixing_components(1.0 / std::cos(M_PI / 7)) == 4);
    CHECK(predicted_mixing_components(1.0 / std::cos(M_PI / 9)) == 8);
    CHECK(predicted_mixing_components(1.0 / std::cos(M_PI / 11)) == 16);
}

TEST_CASE("tower json names its fields") {
    std::string j = tower_to_json(renormalization_tower(1.9));
    CHECK(j.find("\"a\"") != std::string::npos);
    CHECK(j.find("\"m\"") != std::string::npos);
    CHECK(j.find("\"intervals\"") != std::string::npos);
}
