#pragma once

#include <array>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "hilbert/geometry.hpp"

namespace hilbert {

/// Strictly convex polygon with counterclockwise vertices. Validated on
/// construction; the edge i runs from vertex i to vertex i+1 and satisfies
/// normal(i) . x <= offset(i) on the closed body.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  /// Unit outward normal of edge i.
  Point normal(std::size_t i) const { return normals_[i]; }
  double offset(std::size_t i) const { return offsets_[i]; }

  double diameter() const { return diameter_; }
  double area() const;
  Point vertex_centroid() const;

 private:
  std::vector<Point> vertices_;
  std::vector<Point> normals_;
  std::vector<double> offsets_;
  double diameter_ = 0.0;
};

/// The open ellipse { center + shape * u : |u| < 1 } with shape symmetric
/// positive definite. Eigenvalues of shape are the semi-axes.
class EllipseBody {
 public:
  EllipseBody(Point center, const Eigen::Matrix2d& shape);

  /// Axis-aligned semi-axes (a1, a2) rotated counterclockwise by `rotation`.
  static EllipseBody from_axes(Point center, double a1, double a2, double rotation);
  /// Image of the unit disk under u -> center + map * u for any invertible map.
  static EllipseBody from_linear_map(Point center, const Eigen::Matrix2d& map);

  Point center() const { return center_; }
  const Eigen::Matrix2d& shape() const { return shape_; }
  const Eigen::Matrix2d& inverse_shape() const { return inverse_; }

  /// Semi-axes with rotation_rad in (-pi/2, pi/2]; a1 lies along the rotated x-axis.
  std::array<double, 2> semi_axes() const;
  double rotation() const;

  /// Coordinates of p in the unit-disk chart.
  Point to_unit(const Point& p) const;
  Point from_unit(const Point& u) const;

  double area() const;
  double diameter() const;

 private:
  void decompose();

  Point center_;
  Eigen::Matrix2d shape_;
  Eigen::Matrix2d inverse_;
  std::array<double, 2> axes_{};
  double rotation_ = 0.0;
};

using ConvexBody = std::variant<Polygon, EllipseBody>;

struct Chord {
  Point a;
  Point p;
  Point q;
  Point b;
};

double diameter(const ConvexBody& body);

/// True iff pt is strictly interior (margin 1e-12 relative to the body scale).
bool contains(const ConvexBody& body, const Point& pt);

/// Lower bound on the Euclidean distance from an interior point to the
/// boundary (exact for polygons). Negative outside.
double boundary_clearance(const ConvexBody& body, const Point& pt);

/// Parameter interval [t_lo, t_hi] of the line origin + t*dir inside the
/// closed body; t_lo > t_hi when the line misses it.
std::array<double, 2> line_interval(const ConvexBody& body, const Point& origin, const Point& dir);

/// Boundary chord through two distinct interior points, ordered a, p, q, b.
Chord chord_through(const ConvexBody& body, const Point& p, const Point& q);

EllipseBody inflate(const EllipseBody& e, double eps);

/// Points of the ellipse boundary that lie on the polygon boundary, merged
/// within 1e-7 * polygon diameter and ordered by angle around the ellipse center.
std::vector<Point> boundary_intersections(const EllipseBody& e, const Polygon& k);

/// Polar angle of p about c in [0, 2*pi).
double angle_about(const Point& c, const Point& p);

/// Axis-aligned bounding box {min, max}.
std::array<Point, 2> bounding_box(const ConvexBody& body);

}  // namespace hilbert
