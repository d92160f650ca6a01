#include "slapmap/regular.hpp"

#include <cmath>

#include <json.hpp>

namespace slapmap {

ReducedSlap reduced_slap(int d) {
    if (d < 3) throw InvalidArity("reduced slap map requires d >= 3");
    if (d % 2 == 0)
        throw EvenArity("even d: the reduced slap map is the involution 1-x");
    const double beta = std::cos(M_PI / d);
    const double a = 1.0 / beta;
    // -(1/beta)(x - 1/2) mod 1: positive on [0,1/2), wraps up by 1 on (1/2,1]
    std::vector<AffineBranch> branches{
        {0.0, 0.5, -a, 0.5 * a},
        {0.5, 1.0, -a, 1.0 + 0.5 * a},
    };
    return ReducedSlap{d, beta, PiecewiseAffineMap(0.0, 1.0, std::move(branches))};
}

SkewState skew_step(int d, const SkewState& state, Side side) {
    ReducedSlap phi = reduced_slap(d);
    int delta;
    if (state.x < 0.5)
        delta = -1;
    else if (state.x > 0.5)
        delta = 1;
    else
        delta = side == Side::left ? -1 : 1;
    double x2 = phi.map.eval(state.x, side);
    int s2 = ((state.s + (d / 2) * delta) % d + d) % d;
    return SkewState{x2, s2};
}

double conjugation_H(double x, int s) { return x + s; }

SkewState conjugation_H_inverse(double value, int d) {
    if (value < 0.0 || value > d) throw OutOfDomain("H inverse outside [0, d]");
    int s = static_cast<int>(std::floor(value));
    if (s == d) --s;
    return SkewState{value - s, s};
}

AlphaTable alpha_constants(int d) {
    ReducedSlap phi = reduced_slap(d);
    const double beta = phi.beta;
    LorenzAnalysis tower = renormalization_tower(1.0 / beta);
    const int half = d / 2;

    AlphaTable table{d, {}};
    for (int k = 0; k <= tower.m; ++k) {
        auto [jlo, jhi] = tower.intervals[static_cast<std::size_t>(k)];
        const long steps = 1L << k;
        // sample J_k intersected with (1/2, 1]
        double lo = std::max(jlo, 0.5);
        int value = 0;
        bool have = false;
        for (int s = 0; s < 100; ++s) {
            double x = lo + (jhi - lo) * (s + 0.5) / 100.5;
            Orbit orbit = iterate(phi.map, x, Side::right, static_cast<int>(steps));
            if (orbit.truncated) throw NotConstant("orbit left the domain");
            int sum = 0;
            for (long i = 0; i < steps; ++i)
                sum += orbit.points[static_cast<std::size_t>(i)].branch == 0 ? -1 : 1;
            int ak = ((half * sum) % d + d) % d;
            if (!have) {
                value = ak;
                have = true;
            } else if (ak != value) {
                throw NotConstant("alpha_{2^k} not constant on J_k+");
            }
            // antisymmetry under the involution x -> 1-x
            Orbit mirror = iterate(phi.map, 1.0 - x, Side::left, static_cast<int>(steps));
            int msum = 0;
            for (long i = 0; i < steps; ++i)
                msum += mirror.points[static_cast<std::size_t>(i)].branch == 0 ? -1 : 1;
            if (((half * (sum + msum)) % d + d) % d != 0)
                throw NotConstant("alpha_{2^k} not antisymmetric");
        }
        table.constants.push_back(value);
    }
    return table;
}

std::pair<int, int> predict_acips(int d) {
    if (d < 3) throw InvalidArity("predict_acips requires d >= 3");
    if (d % 2 == 0) throw EvenArity("even d: slap map is an involution");
    int mixing = 1 << m_of_polygon(d);
    return {d <= 5 ? 1 : d, mixing};
}

PentagonConstants pentagon_constants() {
    const double s5 = std::sqrt(5.0);
    PentagonConstants c;
    c.e = (3.0 - s5) / 2.0;
    c.b = (9.0 - s5) / 16.0;
    c.J = {c.e, 1.0 - c.e};
    // the Lorenz lift of phi_5 is f_a with a = sqrt(5)-1; its square must
    // send b to the critical point 1/2
    PiecewiseAffineMap f = centrally_symmetric_map(s5 - 1.0);
    double y = f.eval(f.eval(c.b, Side::right), Side::right);
    if (std::abs(y - 0.5) > 1e-10)
        throw Error("pentagon constant b fails the return identity");
    return c;
}

std::string regular_report_json(int d) {
    nlohmann::json j;
    j["d"] = d;
    if (d % 2 == 0) {
        j["involution"] = true;
        return j.dump(2);
    }
    ReducedSlap phi = reduced_slap(d);
    j["beta"] = phi.beta;
    j["m"] = m_of_polygon(d);
    j["alpha"] = alpha_constants(d).constants;
    auto [ergodic, mixing] = predict_acips(d);
    j["predicted"] = {{"ergodic", ergodic}, {"mixing", mixing}};
    return j.dump(2);
}

}  // namespace slapmap
