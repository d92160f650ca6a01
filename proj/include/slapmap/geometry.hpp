#pragma once

#include <string>
#include <vector>

#include "slapmap/pwamap.hpp"

namespace slapmap {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double t, Point2 p) { return {t * p.x, t * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

struct BoundaryPoint {
    double s = 0.0;  // arc length in [0, L)
    int side = 0;
};

// Simple polygon, normalized to counterclockwise orientation; the arc-length
// origin is the first input vertex.
class Polygon {
public:
    explicit Polygon(std::vector<Point2> vertices);  // validates, see build_polygon

    int sides() const { return static_cast<int>(vertices_.size()); }
    const std::vector<Point2>& vertices() const { return vertices_; }
    const std::vector<double>& side_lengths() const { return side_lengths_; }
    const std::vector<double>& cumulative_arclength() const { return cumarc_; }
    double perimeter() const { return cumarc_.back(); }

    Point2 vertex(int i) const { return vertices_[static_cast<std::size_t>(mod(i))]; }
    double side_length(int i) const { return side_lengths_[static_cast<std::size_t>(mod(i))]; }
    // unit direction of side i (from vertex i to vertex i+1)
    Point2 side_dir(int i) const;
    // inward normal of side i (CCW polygon: left of the direction)
    Point2 inward_normal(int i) const;

    Point2 point_at(const BoundaryPoint& p) const;
    // side lookup by arc length; throws AtVertex within tol of a vertex
    BoundaryPoint boundary_point(double s) const;
    // distance from arc length s to the nearest vertex arc length
    double vertex_distance(double s) const;

private:
    int mod(int i) const { return ((i % sides()) + sides()) % sides(); }
    std::vector<Point2> vertices_;
    std::vector<double> side_lengths_;
    std::vector<double> cumarc_;
};

Polygon build_polygon(const std::vector<Point2>& vertices);
Polygon regular_polygon(int d);  // unit side length

// Kite with mirror symmetry about the unit diagonal; alpha and beta are the
// half-angles at the two diagonal vertices, 0 < beta < pi/4 < alpha and
// alpha + beta < pi/2. Boundary sides carry the labels kite_edge_labels().
Polygon kite_polygon(double alpha, double beta);
// label of polygon side i in the 0..3 edge labeling (mirror pairs share parity)
const std::vector<int>& kite_edge_labels();

// First hit of the inward normal ray from p on the boundary. Throws VertexHit
// when the ray meets a vertex within 1e-9 * perimeter.
BoundaryPoint slap_project(const Polygon& P, const BoundaryPoint& p);

bool has_parallel_facing(const Polygon& P);

// The slap map s -> s' as an explicit piecewise-affine map on [0, perimeter].
// Branch endpoints are the polygon vertices together with the normal-ray
// preimages of vertices; affine coefficients are computed analytically.
PiecewiseAffineMap extract_slap_map(const Polygon& P);

std::string polygon_to_json(const Polygon& P);
Polygon polygon_from_json(const std::string& text);

}  // namespace slapmap
