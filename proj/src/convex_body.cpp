#include "hilbert/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace hilbert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Roots of |u0 + t*w|^2 = 1 in increasing order; empty when the line misses.
// Near-tangent discriminants within `tangent_tol` count as a double root.
std::vector<double> unit_circle_roots(const Point& u0, const Point& w, double tangent_tol) {
  const double a = dot(w, w);
  const double b = 2.0 * dot(u0, w);
  const double c = dot(u0, u0) - 1.0;
  if (!(a > 0.0)) return {};
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    if (disc < -tangent_tol * (b * b + std::abs(4.0 * a * c))) return {};
    disc = 0.0;
  }
  const double s = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(s, b));
  double t1 = q / a;
  double t2 = (q != 0.0) ? c / q : t1;
  if (t1 > t2) std::swap(t1, t2);
  return {t1, t2};
}

}  // namespace

// ----------------------------------------------------------------------------
// Polygon
// ----------------------------------------------------------------------------

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) {
    throw Error(ErrorCode::InvalidBody, "polygon needs at least 3 vertices");
  }
  for (const auto& v : vertices_) {
    if (!is_finite(v)) throw Error(ErrorCode::InvalidBody, "polygon vertex is not finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      diameter_ = std::max(diameter_, dist(vertices_[i], vertices_[j]));
    }
  }
  if (!(diameter_ > 0.0)) {
    throw Error(ErrorCode::DegeneratePolygon, "polygon has zero extent");
  }

  const double turn_tol = 1e-12 * diameter_ * diameter_;
  double winding = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point e0 = vertex(i + 1) - vertex(i);
    const Point e1 = vertex(i + 2) - vertex(i + 1);
    const double turn = cross(e0, e1);
    if (!(turn > turn_tol)) {
      throw Error(ErrorCode::InvalidBody,
                  "polygon is not strictly convex and counterclockwise at vertex " +
                      std::to_string((i + 1) % n));
    }
    winding += std::atan2(turn, dot(e0, e1));
  }
  if (std::abs(winding - 2.0 * std::numbers::pi) > 1e-6) {
    throw Error(ErrorCode::InvalidBody, "polygon boundary winds more than once");
  }

  normals_.reserve(n);
  offsets_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point e = vertex(i + 1) - vertex(i);
    const double len = norm(e);
    const Point nrm{e.y / len, -e.x / len};
    normals_.push_back(nrm);
    offsets_.push_back(0.5 * (dot(nrm, vertex(i)) + dot(nrm, vertex(i + 1))));
  }

  // Minimum width over edge directions; attained at an edge for polygons.
  double width = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    double depth = 0.0;
    for (const auto& v : vertices_) depth = std::max(depth, offsets_[i] - dot(normals_[i], v));
    width = std::min(width, depth);
  }
  if (area() < 1e-14 * diameter_ * diameter_ || diameter_ / width > 1e6) {
    throw Error(ErrorCode::DegeneratePolygon, "polygon is needle-like (aspect ratio > 1e6)");
  }
}

double Polygon::area() const {
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) twice += cross(vertex(i), vertex(i + 1));
  return 0.5 * twice;
}

Point Polygon::vertex_centroid() const {
  Point c;
  for (const auto& v : vertices_) c = c + v;
  return c / static_cast<double>(vertices_.size());
}

// ----------------------------------------------------------------------------
// EllipseBody
// ----------------------------------------------------------------------------

EllipseBody::EllipseBody(Point center, const Eigen::Matrix2d& shape) : center_(center) {
  if (!is_finite(center) || !shape.allFinite()) {
    throw Error(ErrorCode::InvalidBody, "ellipse parameters are not finite");
  }
  if (std::abs(shape(0, 1) - shape(1, 0)) > 1e-12 * shape.norm()) {
    throw Error(ErrorCode::InvalidBody, "ellipse shape is not symmetric");
  }
  shape_ = 0.5 * (shape + shape.transpose());
  decompose();
  if (!(axes_[1] > 0.0) || !(axes_[1] > 1e-12 * axes_[0])) {
    throw Error(ErrorCode::InvalidBody, "ellipse shape is not positive definite");
  }
  inverse_ = shape_.inverse();
}

EllipseBody EllipseBody::from_axes(Point center, double a1, double a2, double rotation) {
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  const Eigen::Matrix2d shape = r * Eigen::Vector2d(a1, a2).asDiagonal() * r.transpose();
  return EllipseBody(center, shape);
}

EllipseBody EllipseBody::from_linear_map(Point center, const Eigen::Matrix2d& map) {
  // Polar decomposition: map = S * R with S = sqrt(map * map^T).
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(map * map.transpose());
  const Eigen::Vector2d ev = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix2d shape = eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().transpose();
  return EllipseBody(center, shape);
}

void EllipseBody::decompose() {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(shape_);
  const Eigen::Vector2d ev = eig.eigenvalues();  // ascending
  axes_ = {ev(1), ev(0)};
  if (std::abs(ev(1) - ev(0)) <= 1e-14 * std::abs(ev(1))) {
    rotation_ = 0.0;
    return;
  }
  const Eigen::Vector2d major = eig.eigenvectors().col(1);
  double theta = std::atan2(major(1), major(0));
  if (theta <= -std::numbers::pi / 2) theta += std::numbers::pi;
  if (theta > std::numbers::pi / 2) theta -= std::numbers::pi;
  rotation_ = theta;
}

std::array<double, 2> EllipseBody::semi_axes() const { return axes_; }
double EllipseBody::rotation() const { return rotation_; }

Point EllipseBody::to_unit(const Point& p) const {
  const Eigen::Vector2d u = inverse_ * Eigen::Vector2d(p.x - center_.x, p.y - center_.y);
  return {u(0), u(1)};
}

Point EllipseBody::from_unit(const Point& u) const {
  const Eigen::Vector2d v = shape_ * Eigen::Vector2d(u.x, u.y);
  return {center_.x + v(0), center_.y + v(1)};
}

double EllipseBody::area() const { return std::numbers::pi * shape_.determinant(); }
double EllipseBody::diameter() const { return 2.0 * axes_[0]; }

// ----------------------------------------------------------------------------
// Free functions
// ----------------------------------------------------------------------------

double diameter(const ConvexBody& body) {
  return std::visit([](const auto& b) { return b.diameter(); }, body);
}

double boundary_clearance(const ConvexBody& body, const Point& pt) {
  if (const auto* k = std::get_if<Polygon>(&body)) {
    double gap = kInf;
    for (std::size_t i = 0; i < k->size(); ++i) {
      gap = std::min(gap, k->offset(i) - dot(k->normal(i), pt));
    }
    return gap;
  }
  const auto& e = std::get<EllipseBody>(body);
  return (1.0 - norm(e.to_unit(pt))) * e.semi_axes()[1];
}

bool contains(const ConvexBody& body, const Point& pt) {
  if (!is_finite(pt)) return false;
  if (const auto* e = std::get_if<EllipseBody>(&body)) {
    const Point u = e->to_unit(pt);
    return dot(u, u) < 1.0 - 1e-12;
  }
  return boundary_clearance(body, pt) > 1e-12 * diameter(body);
}

std::array<double, 2> line_interval(const ConvexBody& body, const Point& origin, const Point& dir) {
  if (const auto* e = std::get_if<EllipseBody>(&body)) {
    const Point u0 = e->to_unit(origin);
    const Eigen::Vector2d w = e->inverse_shape() * Eigen::Vector2d(dir.x, dir.y);
    const auto roots = unit_circle_roots(u0, {w(0), w(1)}, 0.0);
    if (roots.empty()) return {kInf, -kInf};
    return {roots[0], roots[1]};
  }
  const auto& k = std::get<Polygon>(body);
  double lo = -kInf;
  double hi = kInf;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double nd = dot(k.normal(i), dir);
    const double room = k.offset(i) - dot(k.normal(i), origin);
    if (nd == 0.0) {
      if (room < 0.0) return {kInf, -kInf};
      continue;
    }
    const double t = room / nd;
    if (nd > 0.0) {
      hi = std::min(hi, t);
    } else {
      lo = std::max(lo, t);
    }
  }
  return {lo, hi};
}

Chord chord_through(const ConvexBody& body, const Point& p, const Point& q) {
  if (!contains(body, p) || !contains(body, q)) {
    throw Error(ErrorCode::PointsOutside, "chord_through: points must be interior");
  }
  const Point d = q - p;
  if (!(norm(d) > 1e-15 * diameter(body))) {
    throw Error(ErrorCode::CoincidentPoints, "chord_through: points coincide");
  }
  const auto [lo, hi] = line_interval(body, p, d);
  return {p + d * lo, p, q, p + d * hi};
}

EllipseBody inflate(const EllipseBody& e, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "inflate: eps must be positive");
  return EllipseBody(e.center(), e.shape() * std::sqrt(1.0 + eps));
}

double angle_about(const Point& c, const Point& p) {
  double a = std::atan2(p.y - c.y, p.x - c.x);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

std::vector<Point> boundary_intersections(const EllipseBody& e, const Polygon& k) {
  std::vector<Point> hits;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const Point v = k.vertex(i);
    const Point d = k.vertex(i + 1) - v;
    const Eigen::Vector2d w = e.inverse_shape() * Eigen::Vector2d(d.x, d.y);
    for (double t : unit_circle_roots(e.to_unit(v), {w(0), w(1)}, 1e-12)) {
      if (t < -1e-12 || t > 1.0 + 1e-12) continue;
      hits.push_back(v + d * std::clamp(t, 0.0, 1.0));
    }
  }
  const Point c = e.center();
  std::stable_sort(hits.begin(), hits.end(), [&](const Point& a, const Point& b) {
    return angle_about(c, a) < angle_about(c, b);
  });

  const double merge = 1e-7 * k.diameter();
  std::vector<Point> out;
  for (const auto& h : hits) {
    if (out.empty() || dist(out.back(), h) > merge) out.push_back(h);
  }
  while (out.size() > 1 && dist(out.front(), out.back()) <= merge) out.pop_back();
  return out;
}

std::array<Point, 2> bounding_box(const ConvexBody& body) {
  if (const auto* k = std::get_if<Polygon>(&body)) {
    Point lo = k->vertex(0);
    Point hi = lo;
    for (const auto& v : k->vertices()) {
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
    }
    return {lo, hi};
  }
  const auto& e = std::get<EllipseBody>(body);
  const Point half{e.shape().row(0).norm(), e.shape().row(1).norm()};
  return {e.center() - half, e.center() + half};
}

}  // namespace hilbert
