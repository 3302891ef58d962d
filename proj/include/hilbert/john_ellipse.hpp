#pragma once

#include <cstdint>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/metric.hpp"

namespace hilbert {

struct Contact {
  Point point;
  std::size_t edge_index = 0;
};

struct JohnResult {
  EllipseBody ellipse;
  std::vector<Contact> contacts{};
  double objective = 0.0;     // log det(shape) at the returned iterate
  double kkt_residual = 0.0;  // central-path gap bound plus centering error
  int iterations = 0;         // total Newton steps
  bool converged = false;     // false: iteration cap hit, best iterate returned
  double audit_max_gain = 0.0;  // largest log-det gain over feasible perturbations
  int audit_samples = 0;
};

inline constexpr int kJohnIterationCap = 500;

/// Maximum-area ellipse inscribed in k, written as { c + S u : |u| <= 1 } with
/// S symmetric positive definite. For each edge n.x <= h the constraint
/// |S n| + n.c <= h is a second-order cone; log det S is maximized with a
/// log barrier and damped Newton centering steps until the gap 2m/t < tol.
///
/// Throws InvalidArgument for tol outside (0, 1e-3]. When the Newton cap is
/// reached the best iterate is returned with converged == false.
JohnResult max_area_inscribed_ellipse(const Polygon& k, double tol = 1e-9);

/// Tangency points of edges whose slack is below max(tol, 1e-7) * diameter,
/// ordered by angle around the ellipse center.
std::vector<Point> contact_points(const JohnResult& r, const Polygon& k, double tol);

/// Ellipse centred at the centroid and tangent to the sides at their midpoints.
EllipseBody steiner_inellipse(const Triangle& t);

}  // namespace hilbert
