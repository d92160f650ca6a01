#include "slapmap/triangles.hpp"

#include <algorithm>
#include <cmath>

namespace slapmap {

namespace {
constexpr double kRightTol = 1e-10;
}

TriangleSpec triangle_spec(double a1, double a2) {
    if (!(a1 > 0 && a2 > 0 && a1 + a2 < M_PI))
        throw InvalidAngles("triangle angles must be positive with a1 + a2 < pi");
    double a3 = M_PI - a1 - a2;
    // the largest angle is opposite the longest side, which becomes side 0
    std::array<double, 3> in{a1, a2, a3};
    std::size_t imax = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (in[i] > in[imax]) imax = i;
    std::array<double, 3> angles{in[imax], 0.0, 0.0};
    std::size_t k = 1;
    for (std::size_t i = 0; i < 3; ++i)
        if (i != imax) angles[k++] = in[i];
    return TriangleSpec{angles, 0};
}

Polygon triangle_from_angles(double a1, double a2, double scale) {
    TriangleSpec spec = triangle_spec(a1, a2);
    // side 0 from (0,0) to (scale,0); base angles are the two smaller ones,
    // in input order: angles[1] at the origin, angles[2] at (scale,0)
    double tl = std::tan(spec.angles[1]);
    double tr = std::tan(spec.angles[2]);
    double y = scale / (1.0 / tl + 1.0 / tr);
    double x = y / tl;
    return Polygon({{0.0, 0.0}, {scale, 0.0}, {x, y}});
}

TriangleClass classify(const TriangleSpec& spec) {
    double largest = *std::max_element(spec.angles.begin(), spec.angles.end());
    if (std::abs(largest - M_PI / 2) <= kRightTol) return TriangleClass::right;
    return largest < M_PI / 2 ? TriangleClass::acute : TriangleClass::obtuse;
}

TrianglePrediction predict_triangle(const TriangleSpec& spec) {
    switch (classify(spec)) {
        case TriangleClass::acute:
            return {1, MixingParity::one};
        case TriangleClass::right:
            return {1, MixingParity::two};
        default:
            return {1, MixingParity::even};
    }
}

bool check_second_iterate_invariance(const Polygon& T) {
    if (T.sides() != 3) throw InvalidArity("expects a triangle");
    PiecewiseAffineMap psi2 = map_power(extract_slap_map(T), 2);
    const double split = T.side_lengths()[0];  // boundary between I_0 and I_1 u I_2
    const double tol = 1e-9 * T.perimeter();
    for (const AffineBranch& b : psi2.branches()) {
        bool from_base = 0.5 * (b.lo + b.hi) < split;
        if (from_base) {
            if (b.image_lo() < -tol || b.image_hi() > split + tol) return false;
        } else {
            if (b.image_lo() < split - tol || b.image_hi() > T.perimeter() + tol)
                return false;
        }
    }
    return true;
}

}  // namespace slapmap
