#include "slapmap/nonergodic.hpp"

#include <algorithm>
#include <cmath>

namespace slapmap {

namespace {

// clip a convex polygon by the half-plane cross(b - a, p - a) >= 0
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, Point2 a, Point2 b) {
    std::vector<Point2> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point2 p = poly[i], q = poly[(i + 1) % n];
        double sp = cross(b - a, p - a);
        double sq = cross(b - a, q - a);
        if (sp >= 0) out.push_back(p);
        if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
            double t = sp / (sp - sq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

std::vector<Point2> triangle_at(double apex_angle, double rotation) {
    // obtuse isosceles triangle, unit base (the longest side), centroid at
    // the origin
    double base_angle = (M_PI - apex_angle) / 2.0;
    double h = 0.5 * std::tan(base_angle);
    std::vector<Point2> t{{-0.5, -h / 3.0}, {0.5, -h / 3.0}, {0.0, 2.0 * h / 3.0}};
    double cs = std::cos(rotation), sn = std::sin(rotation);
    for (auto& p : t) p = {cs * p.x - sn * p.y, sn * p.x + cs * p.y};
    return t;
}

}  // namespace

Polygon nonergodic_polygon(int n, double apex_angle) {
    if (n < 2) throw InvalidArity("construction requires n >= 2");
    if (!(M_PI / 2 < apex_angle && apex_angle < M_PI))
        throw ConstructionFailed("apex angle must be obtuse");
    std::vector<Point2> poly = triangle_at(apex_angle, 0.0);
    for (int k = 1; k < n; ++k) {
        // side normals of one triangle are roughly 120 degrees apart, so
        // steps of 2pi/(3n) interleave all 3n side directions evenly
        std::vector<Point2> tri = triangle_at(apex_angle, 2.0 * M_PI * k / (3.0 * n));
        for (std::size_t i = 0; i < 3; ++i)
            poly = clip_halfplane(poly, tri[i], tri[(i + 1) % 3]);
        if (poly.size() < 3) throw ConstructionFailed("intersection degenerated");
    }
    // drop near-collinear artifacts of the clipping
    std::vector<Point2> cleaned;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        Point2 prev = poly[(i + m - 1) % m], cur = poly[i], next = poly[(i + 1) % m];
        if (std::hypot(cur.x - prev.x, cur.y - prev.y) < 1e-9) continue;
        if (std::abs(cross(cur - prev, next - cur)) < 1e-12) continue;
        cleaned.push_back(cur);
    }
    if (static_cast<int>(cleaned.size()) != 3 * n)
        throw ConstructionFailed("intersection is not a 3n-gon");
    Polygon P(cleaned);
    if (has_parallel_facing(P))
        throw ConstructionFailed("intersection has parallel facing sides");
    return P;
}

NonErgodicResult build_nonergodic(int n, int bins_per_unit) {
    static const double kSchedule[] = {2.2, 2.0, 2.4, 1.9, 2.5, 1.8, 2.6, 2.1, 2.3};
    std::string last_error = "no apex angle tried";
    for (double apex : kSchedule) {
        try {
            Polygon P = nonergodic_polygon(n, apex);
            AnalyzeOptions opts;
            opts.compute_density = false;
            int bins = std::max(100, static_cast<int>(bins_per_unit * P.perimeter()));
            ErgodicReport rep = analyze(extract_slap_map(P), bins, opts);
            bool ok = static_cast<int>(rep.components.size()) == n && rep.refinement_stable;
            for (const auto& c : rep.components)
                if (c.period % 2 != 0) ok = false;
            if (ok) return NonErgodicResult{std::move(P), std::move(rep), apex};
            last_error = "analysis found " + std::to_string(rep.components.size()) +
                         " classes at apex " + std::to_string(apex);
        } catch (const Error& e) {
            last_error = e.what();
        }
    }
    throw ConstructionFailed("nonergodic construction failed: " + last_error);
}

}  // namespace slapmap
