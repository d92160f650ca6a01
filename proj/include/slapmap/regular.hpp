#pragma once

#include <utility>
#include <vector>

#include "slapmap/lorenz.hpp"
#include "slapmap/pwamap.hpp"

namespace slapmap {

// Reduced slap map of the regular d-gon (odd d), the two-branch map
// phi_d(x) = -(1/beta_d)(x - 1/2) mod 1 with beta_d = cos(pi/d).
struct ReducedSlap {
    int d;
    double beta;
    PiecewiseAffineMap map;
};

struct SkewState {
    double x;
    int s;  // in [0, d)
};

struct AlphaTable {
    int d;
    std::vector<int> constants;  // a_0 .. a_m, each in [0, d)
};

ReducedSlap reduced_slap(int d);

// One step of the skew product F_d(x, s) = (phi_d(x), s + floor(d/2) delta(x)).
SkewState skew_step(int d, const SkewState& state, Side side);

// H(x, s) = x + s and its inverse on [0, d]
double conjugation_H(double x, int s);
SkewState conjugation_H_inverse(double value, int d);

// Translation constants of the skew-product orbit sums over the
// renormalization tower; verified constant over samples and antisymmetric
// under x -> 1-x.
AlphaTable alpha_constants(int d);

// (ergodic acip count, mixing components) predicted for the regular d-gon
std::pair<int, int> predict_acips(int d);

struct PentagonConstants {
    double e;  // (3 - sqrt 5)/2
    double b;  // (9 - sqrt 5)/16
    std::pair<double, double> J;  // [e, 1-e]
};

PentagonConstants pentagon_constants();

std::string regular_report_json(int d);

}  // namespace slapmap
