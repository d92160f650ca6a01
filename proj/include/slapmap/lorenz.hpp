#pragma once

#include <utility>
#include <vector>

#include "slapmap/pwamap.hpp"

namespace slapmap {

// Renormalization tower of the centrally symmetric family
// f_a(x) = a(x - 1/2) mod 1, 1 < a <= 2.
struct LorenzAnalysis {
    double a = 0.0;
    int m = 0;
    // J_0 = [0,1] down to J_m, nested and centrally symmetric about 1/2
    std::vector<std::pair<double, double>> intervals;
};

// f_a as an explicit two-branch map on [0, 1]
PiecewiseAffineMap centrally_symmetric_map(double a);

// The unique m with 2^(2^(-m-1)) < a <= 2^(2^(-m)).
int m_of_slope(double a);

// Integer part of -log2(-log2 cos(pi/d)) for odd d; agrees with
// m_of_slope(1/cos(pi/d)).
int m_of_polygon(int d);

// Nested renormalization intervals, validated by explicit invariance checks.
LorenzAnalysis renormalization_tower(double a);

// 2^m(a)
int predicted_mixing_components(double a);

std::string tower_to_json(const LorenzAnalysis& t);

}  // namespace slapmap
