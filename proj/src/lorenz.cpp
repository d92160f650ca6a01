#include "slapmap/lorenz.hpp"

#include <cmath>

#include <json.hpp>

namespace slapmap {

PiecewiseAffineMap centrally_symmetric_map(double a) {
    if (!(1.0 < a && a <= 2.0)) throw OutOfRange("slope must be in (1, 2]");
    // a(x - 1/2) mod 1 resolved into explicit branches:
    // left branch wraps up by 1, right branch does not wrap
    std::vector<AffineBranch> branches{
        {0.0, 0.5, a, 1.0 - 0.5 * a},
        {0.5, 1.0, a, -0.5 * a},
    };
    return PiecewiseAffineMap(0.0, 1.0, std::move(branches));
}

int m_of_slope(double a) {
    if (!(1.0 < a && a <= 2.0)) throw OutOfRange("slope must be in (1, 2]");
    int m = 0;
    while (a <= std::pow(2.0, std::pow(2.0, -m - 1))) {
        ++m;
        if (m > 64) throw OutOfRange("slope too close to 1");
    }
    return m;
}

int m_of_polygon(int d) {
    if (d < 3) throw InvalidArity("m(d) requires odd d >= 3");
    if (d % 2 == 0) throw EvenArity("m(d) requires odd d >= 3");
    double beta = std::cos(M_PI / d);
    int m = static_cast<int>(std::floor(-std::log2(-std::log2(beta))));
    return m;
}

LorenzAnalysis renormalization_tower(double a) {
    if (!(1.0 < a && a <= 2.0)) throw OutOfRange("slope must be in (1, 2]");
    LorenzAnalysis tower;
    tower.a = a;
    tower.intervals.push_back({0.0, 1.0});
    const double sqrt2 = std::sqrt(2.0);
    double ak = a;
    double lo = 0.0, hi = 1.0;
    while (ak <= sqrt2) {
        // in the rescaled coordinates of level k the return map is f_{a_k};
        // its renormalization interval is [f_{a_k}(0), f_{a_k}(1)]
        double w = hi - lo;
        double nlo = lo + (1.0 - 0.5 * ak) * w;
        double nhi = lo + 0.5 * ak * w;
        lo = nlo;
        hi = nhi;
        tower.intervals.push_back({lo, hi});
        ak *= ak;
        ++tower.m;
        if (tower.m > 64) throw OutOfRange("slope too close to 1");
    }
    // validate: the 2^k-th iterate keeps J_k inside itself
    PiecewiseAffineMap f = centrally_symmetric_map(a);
    for (int k = 1; k <= tower.m; ++k) {
        auto [jlo, jhi] = tower.intervals[static_cast<std::size_t>(k)];
        const long steps = 1L << k;
        for (int s = 0; s <= 100; ++s) {
            double x = jlo + (jhi - jlo) * (s + 0.5) / 101.5;
            Side side = Side::right;
            for (long i = 0; i < steps; ++i) {
                int bi = f.branch_index(x, side);
                x = f.branches()[static_cast<std::size_t>(bi)].at(x);
            }
            if (x < jlo - 1e-10 || x > jhi + 1e-10)
                throw TowerValidationFailed("renormalization interval not invariant");
        }
    }
    if (tower.m != m_of_slope(a))
        throw TowerValidationFailed("tower depth disagrees with m(a)");
    return tower;
}

int predicted_mixing_components(double a) { return 1 << m_of_slope(a); }

std::string tower_to_json(const LorenzAnalysis& t) {
    nlohmann::json j;
    j["a"] = t.a;
    j["m"] = t.m;
    j["intervals"] = nlohmann::json::array();
    for (auto [lo, hi] : t.intervals) j["intervals"].push_back({lo, hi});
    return j.dump(2);
}

}  // namespace slapmap
