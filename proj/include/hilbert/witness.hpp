#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/john_ellipse.hpp"
#include "hilbert/metric.hpp"

namespace hilbert {

/// Five points of the common boundary, labeled so that their cyclic order on
/// the ellipse is p1, p2, p5, p3, p4 and the gap from p4 back to p1 is free.
struct FivePoints {
  Point p1, p2, p3, p4, p5;
};

struct WorkingEllipse {
  EllipseBody ellipse;
  std::vector<Point> points;  // common boundary points, ordered by angle
  double eps = 0.0;
};

struct ChartCoords {
  double b = 0.0;        // P(B)
  double x = 0.0;        // P(q), exit through the ellipse
  double x_prime = 0.0;  // P(q'), exit through the body
  double m = 0.0;        // f(x)
  double m_prime = 0.0;  // f(x')
};

struct WitnessReport {
  ConvexBody body;
  EllipseBody ellipse_E;
  double eps_used = 0.0;
  std::vector<Point> boundary_points{};
  FivePoints five_points{};
  Point u{}, A{}, B{}, C{}, q{}, q_prime{};
  ChartCoords line_coords{};
  Point midpoint_ellipse{};  // midpoint of BC under the ellipse metric
  Point midpoint_body{};   // midpoint of BC under the body metric
  MedianReport medians{};  // under the body metric
  double defect = 0.0;
  double defect_ellipse = 0.0;  // same triangle under the ellipse metric
  int attempts = 0;             // u samples consumed
};

struct TriangleConstruction {
  Triangle triangle;
  FivePoints labels;  // may be mirrored so that C precedes B from p5
};

inline constexpr double kEpsStart = 0.1;
inline constexpr int kEpsSteps = 40;

/// John ellipse of k, inflated by the largest eps = 0.1 * 2^-j for which the
/// ellipse boundary meets the polygon boundary in at least `min_points`
/// points. eps is 0 when the John contacts already suffice.
WorkingEllipse working_ellipse(const Polygon& k, int min_points = 5, double tol = 1e-9);

/// Choose five of the angularly ordered points (angles taken about `center`)
/// maximizing the smallest cyclic gap, ties broken by the lexicographically
/// smallest index set. The largest of the five gaps becomes the p4 -> p1 gap.
FivePoints select_five(std::span<const Point> points, const Point& center);

/// Deterministic low-discrepancy point of k outside e, inside the angular
/// sector (about e's center) running counterclockwise from p4 to p1, such that
/// the line p5-u misses `avoid` by at least 1e-6 * diameter.
Point pick_u(const ConvexBody& k, const EllipseBody& e, const Point& p1, const Point& p4,
             const Point& p5, std::optional<Point> avoid, std::uint64_t rng_seed);

/// A = p1p3 ^ p2p4, B = p5u ^ p1p3, C = p5u ^ p2p4, with C nearer to p5.
TriangleConstruction construct_triangle(const FivePoints& pts, const Point& u);

/// The full constructive argument on a polygon. The ConvexBody overload also
/// accepts an ellipse, for which it fails with NoExteriorRegion.
WitnessReport witness(const Polygon& k, std::uint64_t rng_seed, double tol = 1e-9);
WitnessReport witness(const ConvexBody& k, std::uint64_t rng_seed, double tol = 1e-9);

struct ScanResult {
  Triangle triangle;
  double defect = 0.0;
};

/// Margin from the boundary, as a fraction of the body diameter, used by
/// defect_scan and refine.
inline constexpr double kScanMargin = 1e-3;
/// Smallest admissible |twice area| / diameter^2 for sampled triangles.
inline constexpr double kScanMinShape = 1e-2;

bool admissible_triangle(const ConvexBody& body, const Triangle& t);

/// Best of `samples` random admissible triangles, vertex i of sample j drawn
/// from a generator seeded by (rng_seed, j).
ScanResult defect_scan(const ConvexBody& body, int samples, std::uint64_t rng_seed);

/// Nelder-Mead ascent of the defect over the six vertex coordinates;
/// inadmissible triangles are never accepted.
ScanResult refine(const ConvexBody& body, const Triangle& t, int iters);

}  // namespace hilbert
