#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slapmap/errors.hpp"

namespace slapmap {

// One-sided limits at breakpoints. Values exactly at a breakpoint are never
// defined; every query carries a side.
enum class Side { left, right };

inline Side flip(Side s) { return s == Side::left ? Side::right : Side::left; }

struct AffineBranch {
    double lo = 0.0;
    double hi = 0.0;
    double slope = 0.0;
    double intercept = 0.0;

    double at(double x) const { return slope * x + intercept; }
    // image interval, ordered
    double image_lo() const { return slope >= 0 ? at(lo) : at(hi); }
    double image_hi() const { return slope >= 0 ? at(hi) : at(lo); }
    double inverse_at(double y) const { return (y - intercept) / slope; }
};

// Piecewise-affine map on [domain_lo, domain_hi]; branches tile the domain
// with disjoint interiors, sorted by lo.
class PiecewiseAffineMap {
public:
    PiecewiseAffineMap(double domain_lo, double domain_hi,
                       std::vector<AffineBranch> branches);

    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }
    double domain_length() const { return hi_ - lo_; }
    const std::vector<AffineBranch>& branches() const { return branches_; }
    double min_expansion() const { return min_expansion_; }
    bool expanding() const { return min_expansion_ > 1.0; }
    double tol() const { return 1e-10 * (hi_ - lo_); }

    // interior breakpoints (branch boundaries excluding domain endpoints)
    std::vector<double> breakpoints() const;

    // branch index whose closed interval contains x on the requested side
    int branch_index(double x, Side side) const;

    double eval(double x, Side side) const;

    std::uint64_t digest() const;

private:
    double lo_, hi_;
    std::vector<AffineBranch> branches_;
    double min_expansion_;
};

struct OrbitPoint {
    double x;
    Side side;    // side from which the next branch is selected
    int branch;   // branch taken from this point; -1 for the final point
};

struct Orbit {
    std::vector<OrbitPoint> points;  // length n+1 when complete
    bool truncated = false;          // stopped at a domain endpoint facing out
};

// Orbit of length n+1 with branch indices; orientation-reversing branches
// flip the propagated side.
Orbit iterate(const PiecewiseAffineMap& f, double x, Side side, int n);

// Composition of the branches of f along an itinerary, with its maximal
// valid domain interval. Throws EmptyDomain when the composition dies.
AffineBranch compose_along(const PiecewiseAffineMap& f,
                           const std::vector<int>& itinerary);

// g after f, as an explicit piecewise-affine map.
PiecewiseAffineMap compose(const PiecewiseAffineMap& g,
                           const PiecewiseAffineMap& f);

PiecewiseAffineMap map_power(const PiecewiseAffineMap& f, int n);

// Restriction of f to [lo, hi] rescaled affinely onto [0, 1]. The caller is
// responsible for supplying the correct return iterate; throws NotInvariant
// when f([lo, hi]) is not contained in [lo, hi].
PiecewiseAffineMap restrict_and_rescale(const PiecewiseAffineMap& f,
                                        double lo, double hi);

// True iff f (on [0,1]) has exactly one interior discontinuity c with
// f(c-)=1, f(c+)=0 and is increasing on both sides.
bool is_lorenz(const PiecewiseAffineMap& f);

std::string map_to_json(const PiecewiseAffineMap& f);
PiecewiseAffineMap map_from_json(const std::string& text);

// columns x, f_left(x), f_right(x)
std::string sample_csv(const PiecewiseAffineMap& f, int samples);

}  // namespace slapmap
