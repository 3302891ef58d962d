#include "hilbert/metric.hpp"

#include <algorithm>
#include <cmath>

namespace hilbert {

namespace {

void require_interior(const ConvexBody& body, const Point& p, const char* op) {
  if (!contains(body, p) || boundary_clearance(body, p) < kBoundaryMargin * diameter(body)) {
    throw Error(ErrorCode::PointsOutside, std::string(op) + ": point is not interior to the body");
  }
}

}  // namespace

double Triangle::diameter() const {
  return std::max({dist(A, B), dist(B, C), dist(A, C)});
}

double distance(const ConvexBody& body, const Point& x, const Point& y) {
  require_interior(body, x, "distance");
  require_interior(body, y, "distance");
  if (x == y) return 0.0;
  const Chord c = chord_through(body, x, y);
  return 0.5 * std::log(cross_ratio(c.a, c.p, c.q, c.b));
}

double midpoint_line_coords(double s, double t, double L) {
  if (!(0.0 < s && s <= t && t < L) || !std::isfinite(L)) {
    throw Error(ErrorCode::OrderViolation, "midpoint_line_coords: requires 0 < s <= t < L");
  }
  const double g = std::sqrt(s * t);
  return L * g / (g + std::sqrt((L - s) * (L - t)));
}

Point midpoint(const ConvexBody& body, const Point& p, const Point& q) {
  require_interior(body, p, "midpoint");
  require_interior(body, q, "midpoint");
  if (dist(p, q) < 1e-12) return p;

  const Chord c = chord_through(body, p, q);
  const double len = dist(c.a, c.b);
  const Point dir = (c.b - c.a) / len;
  // The max guards s <= t against rounding when p and q are very close.
  const double s = dist(c.a, p);
  const double t = std::max(s, dist(c.a, q));
  const double m = midpoint_line_coords(s, t, len);
  return c.a + dir * m;
}

double concurrency_defect(const std::array<Line, 3>& lines, double scale) {
  double defect = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Line& l1 = lines[i];
    const Line& l2 = lines[(i + 1) % 3];
    const Line& other = lines[(i + 2) % 3];
    const Point meet = intersect_lines(l1, l2);
    defect = std::max(defect, distance_to_line(other, meet) / scale);
  }
  return defect;
}

MedianReport median_report(const ConvexBody& body, const Triangle& t) {
  const double diam = t.diameter();
  if (!(diam > 0.0) || std::abs(t.twice_area()) <= 1e-12 * diam * diam) {
    throw Error(ErrorCode::DegenerateTriangle, "median_report: triangle is degenerate");
  }
  for (const Point& v : {t.A, t.B, t.C}) require_interior(body, v, "median_report");

  MedianReport r;
  r.midpoints = {midpoint(body, t.B, t.C), midpoint(body, t.A, t.C), midpoint(body, t.A, t.B)};
  r.medians = {line_through(t.A, r.midpoints[0]), line_through(t.B, r.midpoints[1]),
               line_through(t.C, r.midpoints[2])};
  r.pairwise_meets = {intersect_lines(r.medians[0], r.medians[1]),
                      intersect_lines(r.medians[1], r.medians[2]),
                      intersect_lines(r.medians[0], r.medians[2])};
  r.defect = concurrency_defect(r.medians, diam);
  return r;
}

}  // namespace hilbert
