#include "slapmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace slapmap {

namespace {

double length(Point2 v) { return std::hypot(v.x, v.y); }

// proper or improper intersection of segments [a,b] and [c,d]
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
    auto orient = [](Point2 p, Point2 q, Point2 r) {
        double v = cross(q - p, r - p);
        double scale = std::max({std::abs(q.x - p.x), std::abs(q.y - p.y),
                                 std::abs(r.x - p.x), std::abs(r.y - p.y), 1.0});
        if (std::abs(v) < 1e-14 * scale * scale) return 0;
        return v > 0 ? 1 : -1;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    auto on = [&](Point2 p, Point2 q, Point2 r) {
        return orient(p, q, r) == 0 && std::min(p.x, q.x) - 1e-14 <= r.x &&
               r.x <= std::max(p.x, q.x) + 1e-14 && std::min(p.y, q.y) - 1e-14 <= r.y &&
               r.y <= std::max(p.y, q.y) + 1e-14;
    };
    return on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b);
}

}  // namespace

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    const int d = static_cast<int>(vertices_.size());
    if (d < 3) throw InvalidArity("polygon needs at least 3 vertices");

    double scale = 0.0;
    for (const auto& v : vertices_) scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
    if (scale == 0.0) throw Degenerate("all vertices at the origin");
    const double eps = 1e-12 * scale;

    for (int i = 0; i < d; ++i) {
        Point2 a = vertices_[static_cast<std::size_t>(i)];
        Point2 b = vertices_[static_cast<std::size_t>((i + 1) % d)];
        Point2 c = vertices_[static_cast<std::size_t>((i + 2) % d)];
        if (length(b - a) < eps) throw Degenerate("coincident consecutive vertices");
        if (std::abs(cross(b - a, c - b)) < eps * length(b - a))
            throw Degenerate("collinear consecutive vertices");
    }

    // simplicity: non-adjacent edges must not intersect
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            if (j == i || (j + 1) % d == i || (i + 1) % d == j) continue;
            if (segments_intersect(vertices_[static_cast<std::size_t>(i)],
                                   vertices_[static_cast<std::size_t>((i + 1) % d)],
                                   vertices_[static_cast<std::size_t>(j)],
                                   vertices_[static_cast<std::size_t>((j + 1) % d)]))
                throw SelfIntersecting("non-adjacent edges intersect");
        }
    }

    double area2 = 0.0;
    for (int i = 0; i < d; ++i)
        area2 += cross(vertices_[static_cast<std::size_t>(i)],
                       vertices_[static_cast<std::size_t>((i + 1) % d)]);
    if (area2 < 0.0) std::reverse(vertices_.begin() + 1, vertices_.end());

    cumarc_.push_back(0.0);
    for (int i = 0; i < d; ++i) {
        double len = length(vertices_[static_cast<std::size_t>((i + 1) % d)] -
                            vertices_[static_cast<std::size_t>(i)]);
        side_lengths_.push_back(len);
        cumarc_.push_back(cumarc_.back() + len);
    }
}

Point2 Polygon::side_dir(int i) const {
    i = mod(i);
    Point2 v = vertex(i + 1) - vertex(i);
    double len = length(v);
    return {v.x / len, v.y / len};
}

Point2 Polygon::inward_normal(int i) const {
    Point2 u = side_dir(i);
    return {-u.y, u.x};
}

Point2 Polygon::point_at(const BoundaryPoint& p) const {
    double t = p.s - cumarc_[static_cast<std::size_t>(p.side)];
    return vertex(p.side) + t * side_dir(p.side);
}

double Polygon::vertex_distance(double s) const {
    double best = std::numeric_limits<double>::infinity();
    for (double c : cumarc_) best = std::min(best, std::abs(s - c));
    // wrap: the origin vertex also sits at arc length L
    best = std::min(best, std::abs(perimeter() - s));
    best = std::min(best, std::abs(s));
    return best;
}

BoundaryPoint Polygon::boundary_point(double s) const {
    const double tol = 1e-9 * perimeter();
    if (s < -tol || s > perimeter() + tol) throw OutOfDomain("arc length outside [0, L]");
    if (vertex_distance(s) < tol) throw AtVertex("boundary point at a vertex");
    auto it = std::upper_bound(cumarc_.begin(), cumarc_.end(), s);
    int side = static_cast<int>(it - cumarc_.begin()) - 1;
    side = std::clamp(side, 0, sides() - 1);
    return {s, side};
}

Polygon build_polygon(const std::vector<Point2>& vertices) { return Polygon(vertices); }

Polygon regular_polygon(int d) {
    if (d < 3) throw InvalidArity("regular polygon needs d >= 3");
    const double R = 0.5 / std::sin(M_PI / d);
    std::vector<Point2> vertices;
    for (int k = 0; k < d; ++k) {
        double th = 2.0 * M_PI * k / d;
        vertices.push_back({R * std::cos(th), R * std::sin(th)});
    }
    return Polygon(std::move(vertices));
}

const std::vector<int>& kite_edge_labels() {
    static const std::vector<int> labels{2, 3, 1, 0};
    return labels;
}

Polygon kite_polygon(double alpha, double beta) {
    if (!(0.0 < beta && beta < M_PI / 4 && M_PI / 4 < alpha && alpha + beta < M_PI / 2))
        throw OutOfFamily("kite angles must satisfy 0 < beta < pi/4 < alpha, alpha+beta < pi/2");
    // diagonal vertices: B=(0,0) with half-angle beta, A=(1,0) with half-angle
    // alpha; off-axis vertex C above the axis, C' its mirror image
    const double sab = std::sin(alpha + beta);
    const double bc = std::sin(alpha) / sab;  // |BC| (side label 0)
    Point2 C{bc * std::cos(beta), bc * std::sin(beta)};
    Point2 Cm{C.x, -C.y};
    // CCW order B, C', A, C puts vertex C at an interior arc length;
    // sides carry the kite labels 2, 3, 1, 0 in this order
    return Polygon({{0.0, 0.0}, Cm, {1.0, 0.0}, C});
}

namespace {

struct RayHit {
    double r;   // distance along the ray
    double w;   // parameter along the hit side, in [0, len_j]
    int side;
};

// first intersection of the ray o + r n, r > rmin, with the boundary
bool first_boundary_hit(const Polygon& P, Point2 o, Point2 n, double rmin, int skip_side,
                        RayHit* hit) {
    bool found = false;
    RayHit best{std::numeric_limits<double>::infinity(), 0.0, -1};
    for (int j = 0; j < P.sides(); ++j) {
        if (j == skip_side) continue;
        Point2 A = P.vertex(j);
        Point2 u = P.side_dir(j);
        double denom = cross(u, n);
        if (std::abs(denom) < 1e-15) continue;  // ray parallel to side j
        // o + r n = A + w u
        double w = cross(o - A, n) / denom;
        double r = cross(A - o, u) / -denom;
        double len = P.side_length(j);
        if (w < -1e-12 * len || w > len * (1.0 + 1e-12)) continue;
        if (r <= rmin) continue;
        if (r < best.r) {
            best = {r, std::clamp(w, 0.0, len), j};
            found = true;
        }
    }
    *hit = best;
    return found;
}

}  // namespace

BoundaryPoint slap_project(const Polygon& P, const BoundaryPoint& p) {
    const double L = P.perimeter();
    if (P.vertex_distance(p.s) < 1e-9 * L) throw AtVertex("slap_project at a vertex");
    Point2 o = P.point_at(p);
    Point2 n = P.inward_normal(p.side);
    RayHit hit;
    if (!first_boundary_hit(P, o, n, 1e-12 * L, p.side, &hit))
        throw Error("slap_project: ray misses the boundary");
    double s2 = P.cumulative_arclength()[static_cast<std::size_t>(hit.side)] + hit.w;
    if (P.vertex_distance(s2) < 1e-9 * L) throw VertexHit("normal ray hits a vertex");
    if (s2 >= L) s2 -= L;
    return {s2, hit.side};
}

bool has_parallel_facing(const Polygon& P) {
    const int d = P.sides();
    for (int i = 0; i < d; ++i) {
        Point2 ui = P.side_dir(i);
        Point2 ni = P.inward_normal(i);
        for (int j = 0; j < d; ++j) {
            if (j == i || j == (i + 1) % d || (j + 1) % d == i) continue;
            Point2 uj = P.side_dir(j);
            if (std::abs(cross(ui, uj)) >= 1e-10) continue;
            // parallel pair: overlap of side j projected onto side i's axis
            Point2 Ai = P.vertex(i);
            double t0 = dot(P.vertex(j) - Ai, ui);
            double t1 = dot(P.vertex(j + 1) - Ai, ui);
            double lo = std::max(0.0, std::min(t0, t1));
            double hi = std::min(P.side_length(i), std::max(t0, t1));
            if (hi <= lo) continue;
            if (dot(P.vertex(j) - Ai, ni) <= 0.0) continue;  // j behind side i
            // the orthogonal segment from the overlap midpoint must reach j
            // with no boundary crossing in between, i.e. j is the first hit
            for (double frac : {0.5, 0.25, 0.75}) {
                double t = lo + frac * (hi - lo);
                Point2 o = Ai + t * ui;
                RayHit hit;
                if (first_boundary_hit(P, o, ni, 1e-12 * P.perimeter(), i, &hit) &&
                    hit.side == j)
                    return true;
            }
        }
    }
    return false;
}

PiecewiseAffineMap extract_slap_map(const Polygon& P) {
    if (has_parallel_facing(P))
        throw NotExpanding("polygon has parallel facing sides");
    const double L = P.perimeter();
    const auto& cum = P.cumulative_arclength();
    std::vector<AffineBranch> branches;
    for (int i = 0; i < P.sides(); ++i) {
        Point2 Ai = P.vertex(i);
        Point2 ui = P.side_dir(i);
        Point2 ni = P.inward_normal(i);
        const double len = P.side_length(i);
        // candidate breakpoints: parameters where the normal ray passes
        // through some vertex strictly inside the polygon
        std::vector<double> cuts{0.0, len};
        for (int v = 0; v < P.sides(); ++v) {
            if (v == i || v == (i + 1) % P.sides()) continue;
            Point2 rel = P.vertex(v) - Ai;
            double t = dot(rel, ui);
            double h = dot(rel, ni);
            if (h > 1e-12 * L && t > 1e-12 * L && t < len - 1e-12 * L) cuts.push_back(t);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [L](double a, double b) { return b - a < 1e-12 * L; }),
                   cuts.end());
        int prev_side = -1;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            double tmid = 0.5 * (cuts[k] + cuts[k + 1]);
            BoundaryPoint img = slap_project(P, {cum[static_cast<std::size_t>(i)] + tmid, i});
            int j = img.side;
            if (j == prev_side) {  // spurious cut, same affine formula: merge
                branches.back().hi = cum[static_cast<std::size_t>(i)] + cuts[k + 1];
                continue;
            }
            Point2 Aj = P.vertex(j);
            Point2 uj = P.side_dir(j);
            double denom = cross(uj, ni);  // cos of the angle between the side lines
            // s' = cum[j] + w(t), w(t) = (cross(Ai - Aj, ni) + t) / denom
            double slope = 1.0 / denom;
            double intercept0 = cum[static_cast<std::size_t>(j)] + cross(Ai - Aj, ni) / denom;
            double glo = cum[static_cast<std::size_t>(i)] + cuts[k];
            double ghi = cum[static_cast<std::size_t>(i)] + cuts[k + 1];
            double gintercept = intercept0 - slope * cum[static_cast<std::size_t>(i)];
            branches.push_back(AffineBranch{glo, ghi, slope, gintercept});
            prev_side = j;
        }
    }
    PiecewiseAffineMap map(0.0, L, std::move(branches));
    if (!map.expanding()) throw NotExpanding("extracted slap map is not expanding");
    return map;
}

std::string polygon_to_json(const Polygon& P) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : P.vertices()) j["vertices"].push_back({v.x, v.y});
    j["perimeter"] = P.perimeter();
    j["side_lengths"] = P.side_lengths();
    j["parallel_facing"] = has_parallel_facing(P);
    return j.dump(2);
}

Polygon polygon_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<Point2> vertices;
    for (const auto& jv : j.at("vertices"))
        vertices.push_back({jv.at(0).get<double>(), jv.at(1).get<double>()});
    return Polygon(std::move(vertices));
}

}  // namespace slapmap
