#pragma once

#include <cmath>

#include "hilbert/error.hpp"

namespace hilbert {

/// A point (or displacement) in the Euclidean plane.
struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  constexpr Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  constexpr Point operator-() const { return {-x, -y}; }
  constexpr Point operator*(double s) const { return {x * s, y * s}; }
  constexpr Point operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Point&) const = default;
};

constexpr Point operator*(double s, const Point& p) { return p * s; }

constexpr double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3-D cross product.
constexpr double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

inline double norm(const Point& p) { return std::hypot(p.x, p.y); }
inline double dist(const Point& a, const Point& b) { return norm(b - a); }
inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Twice the signed area of (a, b, c); positive for a counterclockwise turn.
constexpr double orient(const Point& a, const Point& b, const Point& c) {
  return cross(b - a, c - a);
}

/// Locus alpha*x + beta*y + gamma = 0 with alpha^2 + beta^2 = 1.
struct Line {
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 0.0;

  /// Signed distance of p from the line.
  double eval(const Point& p) const { return alpha * p.x + beta * p.y + gamma; }
  Point normal() const { return {alpha, beta}; }
  /// Unit direction, rotated +90 degrees from the normal.
  Point direction() const { return {-beta, alpha}; }
};

/// Affine chart on a line: p = origin + (t * unit_length) * direction.
/// unit_length rescales the chart so that a chosen point lands at 1.
struct ChordFrame {
  Point origin;
  Point direction{1.0, 0.0};
  double unit_length = 1.0;
};

/// Default absolute tolerance for unit-scale inputs.
inline constexpr double kGeomTol = 1e-9;

// Cross-ratio (a,x,y,b) = (|y-a|/|x-a|) * (|x-b|/|y-b|) of four collinear points.
// Collinearity is measured as the residual of the line through a and b,
// relative to |b-a|, and must stay below `tol`.
double cross_ratio(const Point& a, const Point& x, const Point& y, const Point& b,
                   double tol = kGeomTol);

Line line_through(const Point& p, const Point& q, double tol = 1e-12);

Point intersect_lines(const Line& l1, const Line& l2, double tol = 1e-12);

/// Euclidean distance from p to the line.
inline double distance_to_line(const Line& l, const Point& p) { return std::abs(l.eval(p)); }

/// Frame with origin at `origin`, pointing towards `toward`, scaled so that
/// `unit` (a point on the same line) has coordinate 1.
ChordFrame make_chord_frame(const Point& origin, const Point& toward, const Point& unit);

double chord_coordinate(const ChordFrame& frame, const Point& p, double tol = kGeomTol);

/// Inverse of chord_coordinate.
inline Point chord_point(const ChordFrame& frame, double t) {
  return frame.origin + frame.direction * (t * frame.unit_length);
}

}  // namespace hilbert
