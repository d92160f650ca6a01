#pragma once

#include <array>

#include "slapmap/geometry.hpp"

namespace slapmap {

enum class TriangleClass { acute, right, obtuse };

enum class MixingParity {
    one,       // acute: single mixing component, full support
    two,       // right: exactly two
    even,      // obtuse: even number >= 2
};

struct TriangleSpec {
    std::array<double, 3> angles;  // sum pi; angles[0] is opposite side 0
    int longest_side_index = 0;
};

// Triangle with angles a1, a2 (third = pi - a1 - a2); the longest side is
// placed as side 0 starting at arc length 0 with length scale.
Polygon triangle_from_angles(double a1, double a2, double scale = 1.0);

TriangleSpec triangle_spec(double a1, double a2);

TriangleClass classify(const TriangleSpec& spec);

struct TrianglePrediction {
    int ergodic_count = 1;
    MixingParity parity = MixingParity::one;
};

TrianglePrediction predict_triangle(const TriangleSpec& spec);

// Non-acute triangles only: exact check that the second iterate of the slap
// map keeps side 0 and the union of the other two sides invariant.
bool check_second_iterate_invariance(const Polygon& T);

}  // namespace slapmap
