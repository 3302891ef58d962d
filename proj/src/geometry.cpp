#include "hilbert/geometry.hpp"

#include <algorithm>
#include <string>

namespace hilbert {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonCollinear: return "NonCollinear";
    case ErrorCode::DegenerateRatio: return "DegenerateRatio";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::Parallel: return "Parallel";
    case ErrorCode::OffLine: return "OffLine";
    case ErrorCode::InvalidBody: return "InvalidBody";
    case ErrorCode::PointsOutside: return "PointsOutside";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InflationFailed: return "InflationFailed";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NoExteriorRegion: return "NoExteriorRegion";
    case ErrorCode::AvoidanceFailed: return "AvoidanceFailed";
    case ErrorCode::CollinearInputs: return "CollinearInputs";
    case ErrorCode::LineMissesChord: return "LineMissesChord";
    case ErrorCode::DegenerateWitness: return "DegenerateWitness";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double cross_ratio(const Point& a, const Point& x, const Point& y, const Point& b, double tol) {
  const double span = dist(a, b);
  if (span <= tol) {
    throw Error(ErrorCode::DegenerateRatio, "cross_ratio: chord endpoints coincide");
  }
  const Line l = line_through(a, b, 0.0);
  const double residual = std::max(distance_to_line(l, x), distance_to_line(l, y)) / span;
  if (residual > tol) {
    throw Error(ErrorCode::NonCollinear,
                "cross_ratio: points are not collinear (residual " + std::to_string(residual) + ")");
  }
  const double xa = dist(x, a);
  const double yb = dist(y, b);
  if (xa < tol * span || yb < tol * span) {
    throw Error(ErrorCode::DegenerateRatio, "cross_ratio: interior point on a chord endpoint");
  }
  return (dist(y, a) / xa) * (dist(x, b) / yb);
}

Line line_through(const Point& p, const Point& q, double tol) {
  const Point d = q - p;
  const double len = norm(d);
  if (!(len > tol)) {
    throw Error(ErrorCode::CoincidentPoints, "line_through: points coincide");
  }
  const double alpha = -d.y / len;
  const double beta = d.x / len;
  // Evaluate gamma from both points to halve the rounding bias.
  const double gamma = -0.5 * ((alpha * p.x + beta * p.y) + (alpha * q.x + beta * q.y));
  return {alpha, beta, gamma};
}

Point intersect_lines(const Line& l1, const Line& l2, double tol) {
  const double det = l1.alpha * l2.beta - l2.alpha * l1.beta;
  if (std::abs(det) < tol) {
    throw Error(ErrorCode::Parallel, "intersect_lines: lines are parallel");
  }
  return {(l1.beta * l2.gamma - l2.beta * l1.gamma) / det,
          (l2.alpha * l1.gamma - l1.alpha * l2.gamma) / det};
}

ChordFrame make_chord_frame(const Point& origin, const Point& toward, const Point& unit) {
  const double len = dist(origin, toward);
  if (!(len > 0.0)) {
    throw Error(ErrorCode::CoincidentPoints, "make_chord_frame: direction is undefined");
  }
  ChordFrame frame{origin, (toward - origin) / len, 1.0};
  const double scale = dot(unit - origin, frame.direction);
  if (!(std::abs(scale) > 0.0)) {
    throw Error(ErrorCode::CoincidentPoints, "make_chord_frame: unit point coincides with origin");
  }
  frame.unit_length = scale;
  return frame;
}

double chord_coordinate(const ChordFrame& frame, const Point& p, double tol) {
  const Point v = p - frame.origin;
  const double off = std::abs(cross(frame.direction, v));
  if (off > tol * std::max(1.0, norm(v))) {
    throw Error(ErrorCode::OffLine, "chord_coordinate: point is off the frame line");
  }
  return dot(v, frame.direction) / frame.unit_length;
}

}  // namespace hilbert
