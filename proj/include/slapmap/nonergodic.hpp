#pragma once

#include "slapmap/ergodic.hpp"
#include "slapmap/geometry.hpp"

namespace slapmap {

// Convex 3n-gon built by intersecting n congruent obtuse isosceles triangles
// rotated by 2*pi*k/(3n) about their common centroid, interleaving all 3n
// side directions evenly. The apex angle is a free parameter; construction
// validity (3n sides, convex, no parallel facing sides) is checked explicitly.
Polygon nonergodic_polygon(int n, double apex_angle);

// Tries the documented apex-angle schedule until the construction succeeds
// AND its Ulam analysis shows exactly n terminal classes with even periods.
struct NonErgodicResult {
    Polygon polygon;
    ErgodicReport report;
    double apex_angle;
};

NonErgodicResult build_nonergodic(int n, int bins_per_unit = 3000);

}  // namespace slapmap
