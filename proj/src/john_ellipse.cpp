#include "hilbert/john_ellipse.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Cholesky>

namespace hilbert {

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat3 = Eigen::Matrix3d;

// Polygon constraints n_i . x <= h_i in the normalized frame.
struct Constraints {
  std::vector<Point> normals;
  std::vector<double> offsets;
};

// z = (s11, s12, s22, c1, c2)
Eigen::Matrix2d shape_of(const Vec5& z) {
  Eigen::Matrix2d s;
  s << z(0), z(1), z(1), z(2);
  return s;
}

double shape_det(const Vec5& z) { return z(0) * z(2) - z(1) * z(1); }

Point shape_times(const Vec5& z, const Point& n) {
  return {z(0) * n.x + z(1) * n.y, z(1) * n.x + z(2) * n.y};
}

double room(const Constraints& k, std::size_t i, const Vec5& z) {
  return k.offsets[i] - (k.normals[i].x * z(3) + k.normals[i].y * z(4));
}

bool in_domain(const Constraints& k, const Vec5& z) {
  if (!(z(0) > 0.0) || !(shape_det(z) > 0.0)) return false;
  for (std::size_t i = 0; i < k.normals.size(); ++i) {
    const double r = room(k, i, z);
    const Point w = shape_times(z, k.normals[i]);
    if (!(r > 0.0) || !(r * r - dot(w, w) > 0.0)) return false;
  }
  return true;
}

// Gradient and Hessian of t * (-log det S) - sum_i log(r_i^2 - |S n_i|^2).
void barrier_derivatives(const Constraints& k, const Vec5& z, double t, Vec5& grad, Mat5& hess) {
  grad.setZero();
  hess.setZero();

  const double det = shape_det(z);
  Vec5 ddet = Vec5::Zero();
  ddet << z(2), -2.0 * z(1), z(0), 0.0, 0.0;
  Mat5 d2det = Mat5::Zero();
  d2det(0, 2) = d2det(2, 0) = 1.0;
  d2det(1, 1) = -2.0;
  grad += -t * ddet / det;
  hess += t * (ddet * ddet.transpose() / (det * det) - d2det / det);

  for (std::size_t i = 0; i < k.normals.size(); ++i) {
    const Point n = k.normals[i];
    Eigen::Matrix<double, 2, 3> a;
    a << n.x, n.y, 0.0, 0.0, n.x, n.y;
    const Mat3 gram = a.transpose() * a;
    const Eigen::Vector3d zs(z(0), z(1), z(2));
    const double r = room(k, i, z);
    const double g = r * r - zs.dot(gram * zs);

    Vec5 dg;
    dg.head<3>() = -2.0 * gram * zs;
    dg(3) = -2.0 * r * n.x;
    dg(4) = -2.0 * r * n.y;
    Mat5 d2g = Mat5::Zero();
    d2g.topLeftCorner<3, 3>() = -2.0 * gram;
    d2g(3, 3) = 2.0 * n.x * n.x;
    d2g(3, 4) = d2g(4, 3) = 2.0 * n.x * n.y;
    d2g(4, 4) = 2.0 * n.y * n.y;

    grad += -dg / g;
    hess += dg * dg.transpose() / (g * g) - d2g / g;
  }
}

Vec5 barrier_gradient(const Constraints& k, const Vec5& z, double t) {
  Vec5 grad;
  Mat5 hess;
  barrier_derivatives(k, z, t, grad, hess);
  return grad;
}

// Step length along a descent direction: the first zero of the directional
// derivative inside the domain, capped at the full Newton step. Uses
// gradients only; barrier values lose all precision once t is large.
double line_search(const Constraints& k, const Vec5& z, const Vec5& step, double t) {
  double hi = 1.0;
  while (!in_domain(k, z + hi * step)) {
    hi *= 0.5;
    if (hi < 1e-16) return 0.0;
  }
  if (barrier_gradient(k, z + hi * step, t).dot(step) <= 0.0) return hi;
  double lo = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (barrier_gradient(k, z + mid * step, t).dot(step) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo > 0.0 ? lo : 0.5 * hi;
}

// Largest log det over feasible random perturbations, relative to z.
double perturbation_audit(const Constraints& k, const Vec5& z, int samples, int& used) {
  std::mt19937_64 rng(0x6a6f686eULL);
  std::normal_distribution<double> gauss(0.0, 1e-3);
  const double base = std::log(shape_det(z));
  double gain = -std::numeric_limits<double>::infinity();
  used = 0;
  for (int s = 0; s < samples; ++s) {
    Vec5 p = z;
    for (int j = 0; j < 5; ++j) p(j) += gauss(rng);
    if (!(p(0) > 0.0) || !(shape_det(p) > 0.0)) continue;
    // Shrink the shape until every cone constraint holds.
    double kappa = 1.0;
    bool ok = true;
    for (std::size_t i = 0; i < k.normals.size(); ++i) {
      const double r = room(k, i, p);
      if (!(r > 0.0)) {
        ok = false;
        break;
      }
      kappa = std::min(kappa, r / norm(shape_times(p, k.normals[i])));
    }
    if (!ok) continue;
    p.head<3>() *= kappa;
    gain = std::max(gain, std::log(shape_det(p)) - base);
    ++used;
  }
  return gain;
}

std::vector<Contact> active_contacts(const EllipseBody& e, const Polygon& k, double tol) {
  const double threshold = std::max(tol, 1e-7) * k.diameter();
  std::vector<Contact> out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const Eigen::Vector2d sn = e.shape() * Eigen::Vector2d(k.normal(i).x, k.normal(i).y);
    const double reach = sn.norm();
    const double slack = k.offset(i) - dot(k.normal(i), e.center()) - reach;
    if (slack < threshold) {
      const Eigen::Vector2d tip = e.shape() * sn / reach;
      out.push_back({e.center() + Point{tip(0), tip(1)}, i});
    }
  }
  const Point c = e.center();
  std::stable_sort(out.begin(), out.end(), [&](const Contact& a, const Contact& b) {
    return angle_about(c, a.point) < angle_about(c, b.point);
  });
  return out;
}

}  // namespace

JohnResult max_area_inscribed_ellipse(const Polygon& k, double tol) {
  if (!(tol > 0.0 && tol <= 1e-3)) {
    throw Error(ErrorCode::InvalidArgument, "max_area_inscribed_ellipse: tol must lie in (0, 1e-3]");
  }

  // Work in a frame centred at the vertex average with unit diameter.
  const Point origin = k.vertex_centroid();
  const double scale = k.diameter();
  Constraints cons;
  for (std::size_t i = 0; i < k.size(); ++i) {
    cons.normals.push_back(k.normal(i));
    cons.offsets.push_back((k.offset(i) - dot(k.normal(i), origin)) / scale);
  }
  const std::size_t m = cons.normals.size();

  Vec5 z;
  const double r0 = 0.5 * *std::min_element(cons.offsets.begin(), cons.offsets.end());
  if (!(r0 > 0.0)) throw Error(ErrorCode::DegeneratePolygon, "polygon has no interior");
  z << r0, 0.0, r0, 0.0, 0.0;

  const double nu = 2.0 * static_cast<double>(m);
  double t = 1.0;
  double decrement = 0.0;
  int iterations = 0;
  bool converged = false;

  while (iterations < kJohnIterationCap) {
    // Centering by damped Newton.
    for (int inner = 0; inner < 60 && iterations < kJohnIterationCap; ++inner) {
      Vec5 grad;
      Mat5 hess;
      barrier_derivatives(cons, z, t, grad, hess);
      const Vec5 step = hess.ldlt().solve(-grad);
      decrement = std::sqrt(std::max(0.0, -grad.dot(step)));
      if (decrement * decrement < 1e-10) break;
      ++iterations;
      const double alpha = line_search(cons, z, step, t);
      // Rounding has taken over the Newton direction.
      if (alpha < 1e-10) break;
      z += alpha * step;
    }
    if ((nu + decrement) / t < tol) {
      converged = true;
      break;
    }
    t *= 20.0;
  }

  JohnResult result{.ellipse = EllipseBody(origin + Point{z(3), z(4)} * scale, shape_of(z) * scale)};
  result.objective = std::log(shape_det(z)) + 2.0 * std::log(scale);
  result.kkt_residual = (nu + decrement) / t;
  result.iterations = iterations;
  result.converged = converged;
  result.audit_max_gain = perturbation_audit(cons, z, 200, result.audit_samples);
  result.contacts = active_contacts(result.ellipse, k, tol);
  return result;
}

std::vector<Point> contact_points(const JohnResult& r, const Polygon& k, double tol) {
  std::vector<Point> out;
  for (const auto& c : active_contacts(r.ellipse, k, tol)) out.push_back(c.point);
  return out;
}

EllipseBody steiner_inellipse(const Triangle& t) {
  const double diam = t.diameter();
  if (!(diam > 0.0) || std::abs(t.twice_area()) <= 1e-12 * diam * diam) {
    throw Error(ErrorCode::DegenerateTriangle, "steiner_inellipse: triangle is degenerate");
  }
  const Point g = (t.A + t.B + t.C) / 3.0;
  const Point f1 = (t.C - g) * 0.5;
  const Point f2 = (t.A - t.B) / (2.0 * std::sqrt(3.0));
  Eigen::Matrix2d map;
  map << f1.x, f2.x, f1.y, f2.y;
  return EllipseBody::from_linear_map(g, map);
}

}  // namespace hilbert
