#pragma once

#include <array>
#include <string>
#include <vector>

#include "slapmap/ergodic.hpp"
#include "slapmap/geometry.hpp"

namespace slapmap {

struct KiteConstants {
    double alpha = 0.0, beta = 0.0;
    double ell = 0.0;  // half-perimeter
    double c = 0.0;    // arc length of the off-axis vertex on [0, ell]
    double d = 0.0;    // normal projection of the opposite off-axis vertex
    double e = 0.0;    // upper end of the 01-branch image
    double p = 0.0, q = 0.0;  // image interval of the 10-branch
};

enum class KiteBranch { b00, b01, b10 };

// The three branches of the mirror-reduced kite slap map on [0, ell].
struct KiteBranches {
    AffineBranch psi00;  // [0, d] -> [0, c], slope 1/cos 2beta
    AffineBranch psi01;  // [d, c] -> [c, e], slope 1/cos(alpha-beta)
    AffineBranch psi10;  // [c, ell] -> [p, q], slope 1/cos(alpha-beta)
};

struct PiValue {
    double plus = 0.0;
    double minus = 0.0;
    double norm() const;
};

struct Jacobian2 {
    std::array<std::array<double, 2>, 2> m{};
    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

struct DoublingOrbitReport {
    bool passed = false;
    std::string failure;
    double vertex_s = 0.0;          // arc length of the orbit vertex
    double p = 0.0;                 // merge point of the one-sided orbits
    std::vector<double> trace;      // arc lengths of all orbit points
    std::vector<int> gamma_plus;    // observed side labels
    std::vector<int> gamma_minus;
    std::vector<int> eta;
};

struct ProbeResult {
    ErgodicReport report;
    std::array<int, 2> quadrant{};      // sign pattern of (Pi+, Pi-)
    std::array<double, 2> perturbation{};  // (dalpha, dbeta) applied
    PiValue pi;
};

KiteConstants kite_constants(double alpha, double beta);
KiteBranches kite_branches(const KiteConstants& k);

double branch_eval(const KiteBranches& B, KiteBranch which, double x, bool inverse);

// Pi = (psi00^3 psi10(c) - psi00^-2(c), (psi10 psi01)^2(c) - psi00^-2(c));
// throws OutOfPiDomain with the index of the first violated inequality.
PiValue pi_map(double alpha, double beta);

Jacobian2 jacobian_pi(double alpha, double beta, double h = 1e-6);

struct NewtonResult {
    double alpha = 0.0, beta = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

NewtonResult newton_solve(double alpha0, double beta0, double tol = 1e-12,
                          int max_iter = 100);

// Checks the type-(4,2) doubling orbit on the full kite slap map, plus its
// mirror orbit; mirror=true verifies the reflected itinerary.
DoublingOrbitReport verify_doubling_orbit(double alpha, double beta,
                                          bool mirror = false);

ProbeResult bifurcation_probe(double alpha0, double beta0, double epsilon, int n);

}  // namespace slapmap
