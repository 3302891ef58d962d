#pragma once

#include <array>

#include "hilbert/convex_body.hpp"

namespace hilbert {

struct Triangle {
  Point A;
  Point B;
  Point C;

  double diameter() const;
  /// Twice the signed area.
  double twice_area() const { return orient(A, B, C); }
};

/// Hilbert midpoints, median lines and their pairwise meets for one triangle.
struct MedianReport {
  std::array<Point, 3> midpoints;      // A' on BC, B' on AC, C' on AB
  std::array<Line, 3> medians;         // AA', BB', CC'
  std::array<Point, 3> pairwise_meets; // AA'^BB', BB'^CC', AA'^CC'
  double defect = 0.0;
};

/// Points closer than this fraction of the body diameter to the boundary are
/// rejected by the metric operations.
inline constexpr double kBoundaryMargin = 1e-6;

/// Hilbert distance 1/2 ln (a,x,y,b) on the chord through x and y.
double distance(const ConvexBody& body, const Point& x, const Point& y);

/// Midpoint, in the Hilbert metric of the segment (0, L), of interior
/// coordinates 0 < s <= t < L:
///   m = L sqrt(st) / (sqrt(st) + sqrt((L-s)(L-t))).
/// With s = 1 and t = b this is the map x -> sqrt(b) x / (sqrt(b) + sqrt((x-1)(x-b))).
double midpoint_line_coords(double s, double t, double L);

/// The point m on segment pq with distance(p, m) == distance(m, q).
Point midpoint(const ConvexBody& body, const Point& p, const Point& q);

/// Largest normalized point-to-line distance between the meet of two of the
/// lines and the third line, divided by `scale`.
double concurrency_defect(const std::array<Line, 3>& lines, double scale);

MedianReport median_report(const ConvexBody& body, const Triangle& t);

}  // namespace hilbert
