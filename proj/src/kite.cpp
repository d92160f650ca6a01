#include "slapmap/kite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slapmap {

namespace {

bool in_family(double alpha, double beta) {
    return 0.0 < beta && beta < M_PI / 4 && M_PI / 4 < alpha && alpha + beta < M_PI / 2;
}

}  // namespace

double PiValue::norm() const { return std::hypot(plus, minus); }

KiteConstants kite_constants(double alpha, double beta) {
    if (!in_family(alpha, beta))
        throw OutOfFamily("kite angles outside the family");
    KiteConstants k;
    k.alpha = alpha;
    k.beta = beta;
    const double sab = std::sin(alpha + beta);
    const double ca_b = std::cos(alpha - beta);
    const double c2b = std::cos(2.0 * beta);
    k.ell = (std::sin(alpha) + std::sin(beta)) / sab;
    k.c = std::sin(alpha) / sab;
    k.d = c2b * k.c;
    k.e = (1.0 + ca_b - c2b) / ca_b * k.c;
    k.p = std::cos(alpha + beta) * k.c / ca_b;
    k.q = std::cos(alpha) / ca_b;
    if (!(0.0 < k.d && k.d < k.c && k.c < k.ell && k.p < k.q))
        throw OutOfFamily("kite constants violate their ordering");
    return k;
}

KiteBranches kite_branches(const KiteConstants& k) {
    const double ca_b = std::cos(k.alpha - k.beta);
    const double c2b = std::cos(2.0 * k.beta);
    KiteBranches B;
    B.psi00 = {0.0, k.d, 1.0 / c2b, 0.0};
    B.psi01 = {k.d, k.c, 1.0 / ca_b, (1.0 - c2b / ca_b) * k.c};
    B.psi10 = {k.c, k.ell, 1.0 / ca_b, (std::cos(k.alpha + k.beta) - 1.0) * k.c / ca_b};
    return B;
}

double branch_eval(const KiteBranches& B, KiteBranch which, double x, bool inverse) {
    const AffineBranch& b = which == KiteBranch::b00   ? B.psi00
                            : which == KiteBranch::b01 ? B.psi01
                                                       : B.psi10;
    const double tol = 1e-12 * B.psi10.hi;
    if (inverse) {
        if (x < b.image_lo() - tol || x > b.image_hi() + tol)
            throw OutOfBranch("inverse argument outside the branch image");
        return b.inverse_at(x);
    }
    if (x < b.lo - tol || x > b.hi + tol)
        throw OutOfBranch("argument outside the branch interval");
    return b.at(x);
}

PiValue pi_map(double alpha, double beta) {
    KiteConstants k = kite_constants(alpha, beta);
    KiteBranches B = kite_branches(k);
    auto fail = [](int index) {
        throw OutOfPiDomain("Pi domain inequality " + std::to_string(index) + " violated",
                            index);
    };

    double inv1 = B.psi00.inverse_at(k.c);
    if (!(0.0 < inv1 && inv1 < k.c)) fail(0);
    double inv2 = B.psi00.inverse_at(inv1);

    double u = B.psi10.at(k.c);
    if (!(0.0 < u && u < k.d)) fail(1);
    u = B.psi00.at(u);
    if (!(0.0 < u && u < k.d)) fail(2);
    u = B.psi00.at(u);
    if (!(0.0 < u && u < k.d)) fail(3);
    double plus = B.psi00.at(u) - inv2;

    double v = B.psi01.at(k.c);
    if (!(k.c < v && v < k.ell)) fail(4);
    v = B.psi10.at(v);
    if (!(k.d < v && v < k.c)) fail(5);
    v = B.psi01.at(v);
    if (!(k.c < v && v < k.ell)) fail(6);
    v = B.psi10.at(v);
    // the final point matches psi00^{-2}(c) = c cos^2(2b), which always lies
    // below d = c cos(2b), so the gate is membership in psi00's domain
    if (!(0.0 < v && v < k.d)) fail(7);
    double minus = v - inv2;

    return PiValue{plus, minus};
}

Jacobian2 jacobian_pi(double alpha, double beta, double h) {
    PiValue ap = pi_map(alpha + h, beta), am = pi_map(alpha - h, beta);
    PiValue bp = pi_map(alpha, beta + h), bm = pi_map(alpha, beta - h);
    Jacobian2 J;
    J.m[0][0] = (ap.plus - am.plus) / (2 * h);
    J.m[0][1] = (bp.plus - bm.plus) / (2 * h);
    J.m[1][0] = (ap.minus - am.minus) / (2 * h);
    J.m[1][1] = (bp.minus - bm.minus) / (2 * h);
    return J;
}

NewtonResult newton_solve(double alpha0, double beta0, double tol, int max_iter) {
    double a = alpha0, b = beta0;
    PiValue pi = pi_map(a, b);
    for (int it = 0; it < max_iter; ++it) {
        if (pi.norm() < tol) return NewtonResult{a, b, pi.norm(), it};
        Jacobian2 J = jacobian_pi(a, b);
        double det = J.det();
        if (std::abs(det) < 1e-10) throw SingularJacobian("Newton: singular Jacobian");
        double da = (J.m[1][1] * pi.plus - J.m[0][1] * pi.minus) / det;
        double db = (-J.m[1][0] * pi.plus + J.m[0][0] * pi.minus) / det;
        // halve the step while the trial point leaves the domain or the
        // residual grows
        double lambda = 1.0;
        bool accepted = false;
        while (lambda > 1e-14) {
            double ta = a - lambda * da, tb = b - lambda * db;
            try {
                PiValue trial = pi_map(ta, tb);
                if (trial.norm() < pi.norm()) {
                    a = ta;
                    b = tb;
                    pi = trial;
                    accepted = true;
                    break;
                }
            } catch (const Error&) {
                // left D_Pi; keep damping
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw NoConvergence("Newton: damping failed to reduce the residual",
                                pi.norm());
    }
    if (pi.norm() < tol) return NewtonResult{a, b, pi.norm(), max_iter};
    throw NoConvergence("Newton: iteration cap reached", pi.norm());
}

namespace {

// side label of a full-boundary point; the kite labels sides 2,3,1,0 in
// polygon order
int label_at(const Polygon& P, double s) {
    BoundaryPoint bp = P.boundary_point(s);
    return kite_edge_labels()[static_cast<std::size_t>(bp.side)];
}

int label_of_branch(const Polygon& P, const PiecewiseAffineMap& psi, int branch) {
    double mid = 0.5 * (psi.branches()[static_cast<std::size_t>(branch)].lo +
                        psi.branches()[static_cast<std::size_t>(branch)].hi);
    return label_at(P, mid);
}

std::vector<int> mirrored(const std::vector<int>& labels) {
    std::vector<int> out;
    for (int l : labels) out.push_back(l ^ 2);  // swaps 0<->2 and 1<->3
    return out;
}

}  // namespace

DoublingOrbitReport verify_doubling_orbit(double alpha, double beta, bool mirror) {
    constexpr int kK = 4, kM = 2;
    constexpr double kTol = 1e-8;
    Polygon P = kite_polygon(alpha, beta);
    PiecewiseAffineMap psi = extract_slap_map(P);

    std::vector<int> gamma_plus{1, 2, 0, 2, 0};
    std::vector<int> gamma_minus{0, 3, 0, 3, 0};
    std::vector<int> eta{0, 2, 0};
    // vertex C sits at cumarc[3]; its mirror image C' at cumarc[1]
    double s0 = P.cumulative_arclength()[mirror ? 1 : 3];
    if (mirror) {
        std::vector<int> gp = mirrored(gamma_minus);
        gamma_minus = mirrored(gamma_plus);
        gamma_plus = gp;
        eta = mirrored(eta);
    }

    DoublingOrbitReport rep;
    rep.vertex_s = s0;
    auto run_side = [&](Side side, const std::vector<int>& expected,
                        std::vector<int>* observed) {
        Orbit orbit = iterate(psi, s0, side, kK);
        if (orbit.truncated) throw OrbitMismatch("orbit left the domain");
        for (int i = 0; i < kK; ++i) {
            observed->push_back(
                label_of_branch(P, psi, orbit.points[static_cast<std::size_t>(i)].branch));
            if (i > 0) rep.trace.push_back(orbit.points[static_cast<std::size_t>(i)].x);
        }
        double last = orbit.points.back().x;
        observed->push_back(label_at(P, last));
        if (*observed != expected)
            throw OrbitMismatch("one-sided itinerary differs from the expected labels");
        return last;
    };

    std::vector<int>* gp = &rep.gamma_plus;
    std::vector<int>* gm = &rep.gamma_minus;
    // gamma_plus approaches the vertex along the side carrying its first label
    double pl = run_side(Side::left, gamma_plus, gp);
    double pr = run_side(Side::right, gamma_minus, gm);
    if (std::abs(pl - pr) > kTol)
        throw OrbitMismatch("one-sided orbits do not merge after k steps");
    rep.p = 0.5 * (pl + pr);
    rep.trace.push_back(rep.p);

    Orbit back = iterate(psi, rep.p, Side::right, kM);
    if (back.truncated) throw OrbitMismatch("return orbit left the domain");
    rep.eta.push_back(label_at(P, rep.p));
    rep.eta.push_back(label_of_branch(P, psi, back.points[1].branch));
    rep.eta.push_back(eta.back());
    rep.trace.push_back(back.points[1].x);
    if (rep.eta != eta) throw OrbitMismatch("return itinerary differs from eta");
    if (std::abs(back.points.back().x - s0) > kTol)
        throw OrbitMismatch("orbit does not return to the vertex after m steps");

    // no intermediate point may be a vertex
    for (double s : rep.trace)
        if (P.vertex_distance(s) < kTol)
            throw OrbitMismatch("intermediate orbit point hits a vertex");

    rep.trace.push_back(s0);
    rep.passed = true;
    return rep;
}

namespace {

double trace_distance(double x, const std::vector<double>& trace) {
    double best = std::numeric_limits<double>::infinity();
    for (double t : trace) best = std::min(best, std::abs(x - t));
    return best;
}

bool class_near(const ErgodicComponent& comp, const std::vector<double>& trace,
                double radius) {
    for (auto [lo, hi] : comp.support)
        if (trace_distance(lo, trace) > radius || trace_distance(hi, trace) > radius)
            return false;
    return true;
}

}  // namespace

ProbeResult bifurcation_probe(double alpha0, double beta0, double epsilon, int n) {
    DoublingOrbitReport main_orbit = verify_doubling_orbit(alpha0, beta0, false);
    DoublingOrbitReport mirror_orbit = verify_doubling_orbit(alpha0, beta0, true);

    AnalyzeOptions opts;
    opts.compute_density = false;
    opts.refinement_check = false;

    if (epsilon == 0.0) {
        ProbeResult probe;
        probe.pi = pi_map(alpha0, beta0);
        probe.report = analyze(extract_slap_map(kite_polygon(alpha0, beta0)), n, opts);
        return probe;
    }

    Jacobian2 J = jacobian_pi(alpha0, beta0);
    double det = J.det();
    constexpr int kPeriod = 6;  // k + m
    for (int sp : {-1, 1}) {
        for (int sm : {-1, 1}) {
            // direction pushing (Pi+, Pi-) into this sign quadrant
            double da = (J.m[1][1] * sp - J.m[0][1] * sm) / det;
            double db = (-J.m[1][0] * sp + J.m[0][0] * sm) / det;
            double norm = std::hypot(da, db);
            da *= epsilon / norm;
            db *= epsilon / norm;
            ProbeResult probe;
            probe.quadrant = {sp, sm};
            probe.perturbation = {da, db};
            try {
                probe.pi = pi_map(alpha0 + da, beta0 + db);
                probe.report =
                    analyze(extract_slap_map(kite_polygon(alpha0 + da, beta0 + db)), n, opts);
            } catch (const Error&) {
                continue;
            }
            bool near_main = false, near_mirror = false;
            for (const auto& comp : probe.report.components) {
                if (comp.period != kPeriod) continue;
                if (class_near(comp, main_orbit.trace, 0.2)) near_main = true;
                if (class_near(comp, mirror_orbit.trace, 0.2)) near_mirror = true;
            }
            if (near_main && near_mirror && probe.report.components.size() >= 2)
                return probe;
        }
    }
    throw NoBifurcationFound("no sign quadrant yields two localized components");
}

}  // namespace slapmap
