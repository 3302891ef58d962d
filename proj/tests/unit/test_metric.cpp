#include <cmath>
#include <numbers>

#include <doctest.h>

#include "error_code.hpp"
#include "hilbert/metric.hpp"
#include "oracles.hpp"

using namespace hilbert;

namespace {

const Polygon kSquare({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
const EllipseBody kDisk = EllipseBody::from_axes({0, 0}, 1, 1, 0);

ConvexBody random_body(oracle::Rng& rng, int i) {
  if (i % 2) return oracle::random_polygon(rng, rng.integer(3, 10));
  return oracle::random_ellipse(rng, 10);
}

// Hyperbolic distance in the Klein disk, via the Poincare disk.
double klein_distance(const Point& x, const Point& y) {
  auto to_poincare = [](const Point& p) { return p / (1.0 + std::sqrt(1.0 - dot(p, p))); };
  const Point u = to_poincare(x);
  const Point v = to_poincare(y);
  const double num = 2.0 * dot(u - v, u - v);
  const double den = (1.0 - dot(u, u)) * (1.0 - dot(v, v));
  return std::acosh(1.0 + num / den);
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(distance(kDisk, {0, 0}, {0.5, 0}) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
  CHECK(distance(kSquare, {0, 0}, {0.5, 0}) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
  CHECK(distance(kSquare, {0.3, 0.2}, {0.3, 0.2}) == 0.0);
  CHECK(code_of([] { distance(kDisk, {0, 0}, {1, 0}); }) == ErrorCode::PointsOutside);
  CHECK(code_of([] { distance(kSquare, {0, 0}, {3, 0}); }) == ErrorCode::PointsOutside);
}

TEST_CASE("disk distance is the Klein model distance") {
  oracle::Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const Point x = oracle::random_in_disk(rng, 0.99);
    const Point y = oracle::random_in_disk(rng, 0.99);
    CHECK(distance(kDisk, x, y) == doctest::Approx(klein_distance(x, y)).epsilon(1e-9));
  }
}

TEST_CASE("metric axioms on random bodies") {
  oracle::Rng rng(32);
  for (int i = 0; i < 2000; ++i) {
    const ConvexBody body = random_body(rng, i);
    const Point x = oracle::random_in_body(rng, body, 1e-3);
    const Point y = oracle::random_in_body(rng, body, 1e-3);
    const Point z = oracle::random_in_body(rng, body, 1e-3);
    const double dxy = distance(body, x, y);
    CHECK(dxy > 0.0);
    CHECK(dxy == doctest::Approx(distance(body, y, x)).epsilon(1e-12));
    CHECK(dxy <= distance(body, x, z) + distance(body, z, y) + 1e-12);
    CHECK(dxy == doctest::Approx(oracle::distance(body, x, y)).epsilon(1e-8));
  }
}

TEST_CASE("distance is projectively invariant") {
  oracle::Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    const ConvexBody body = random_body(rng, i);
    const auto p = oracle::random_projective(rng, body);
    const ConvexBody image = oracle::push(p, body);
    const Point x = oracle::random_in_body(rng, body, 1e-2);
    const Point y = oracle::random_in_body(rng, body, 1e-2);
    CHECK(distance(image, p.apply(x), p.apply(y)) == doctest::Approx(distance(body, x, y)).epsilon(1e-8));
  }
}

TEST_CASE("midpoint formula on the line") {
  // s = 1, t = b, L = x gives sqrt(b) x / (sqrt(b) + sqrt((x-1)(x-b)))
  const double b = 2.0, x = 5.0;
  const double f = std::sqrt(b) * x / (std::sqrt(b) + std::sqrt((x - 1) * (x - b)));
  CHECK(midpoint_line_coords(1.0, b, x) == doctest::Approx(f).epsilon(1e-15));
  CHECK(midpoint_line_coords(0.5, 0.5, 1.0) == doctest::Approx(0.5));
  // symmetric chord (0, 2) with points 0.5, 1.5 has midpoint 1
  CHECK(midpoint_line_coords(0.5, 1.5, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(code_of([] { midpoint_line_coords(2.0, 1.0, 3.0); }) == ErrorCode::OrderViolation);
  CHECK(code_of([] { midpoint_line_coords(0.0, 1.0, 3.0); }) == ErrorCode::OrderViolation);
  CHECK(code_of([] { midpoint_line_coords(1.0, 3.0, 3.0); }) == ErrorCode::OrderViolation);
}

TEST_CASE("line midpoint is equidistant and monotone in the far endpoint") {
  oracle::Rng rng(34);
  for (int i = 0; i < 10000; ++i) {
    const double s = rng.uniform(0.01, 1.0);
    const double t = s * rng.uniform(1.0, 10.0);
    const double len = t * rng.uniform(1.001, 100.0);
    const double m = midpoint_line_coords(s, t, len);
    CHECK(m >= s);
    CHECK(m <= t);
    const double left = std::log((m / s) * ((len - s) / (len - m)));
    const double right = std::log((t / m) * ((len - m) / (len - t)));
    CHECK(left == doctest::Approx(right).epsilon(1e-9).scale(1.0));
    if (t > s * (1 + 1e-6)) CHECK(midpoint_line_coords(s, t, len * 1.01) < m);
  }
}

TEST_CASE("midpoint matches the bisection oracle") {
  oracle::Rng rng(35);
  for (int i = 0; i < 2000; ++i) {
    const ConvexBody body = random_body(rng, i);
    const Point p = oracle::random_in_body(rng, body, 1e-3);
    const Point q = oracle::random_in_body(rng, body, 1e-3);
    const Point m = midpoint(body, p, q);
    CHECK(dist(m, oracle::midpoint(body, p, q)) < 1e-10 * diameter(body));
    CHECK(distance(body, p, m) == doctest::Approx(distance(body, m, q)).epsilon(1e-9));
  }
  CHECK(midpoint(kDisk, {0.1, 0.2}, {0.1, 0.2}) == Point{0.1, 0.2});
}

TEST_CASE("medians concur in ellipses") {
  oracle::Rng rng(36);
  for (int i = 0; i < 200; ++i) {
    const ConvexBody body = i % 2 ? ConvexBody{kDisk} : ConvexBody{oracle::random_ellipse(rng, 10)};
    const Triangle t = oracle::random_triangle(rng, body, 1e-3, 1e-2);
    const MedianReport r = median_report(body, t);
    CHECK(r.defect < 1e-8);
    CHECK(dist(r.pairwise_meets[0], r.pairwise_meets[1]) < 1e-7 * t.diameter());
    CHECK(r.midpoints[0] == midpoint(body, t.B, t.C));
    CHECK(r.midpoints[1] == midpoint(body, t.A, t.C));
    CHECK(r.midpoints[2] == midpoint(body, t.A, t.B));
  }
}

TEST_CASE("median report on the square") {
  const Triangle t{{-0.8, 0.0}, {0.5, 0.55}, {0.2, -0.7}};
  const MedianReport r = median_report(kSquare, t);
  const double golden = 0.013721051179683766;  // bisection oracle
  CHECK(r.defect > 0.0);
  CHECK(r.defect == doctest::Approx(oracle::median_defect(kSquare, t)).epsilon(1e-7));
  CHECK(r.defect == doctest::Approx(golden).epsilon(1e-9));
  // each midpoint sits on its edge
  const std::array<std::array<Point, 2>, 3> edges{{{t.B, t.C}, {t.A, t.C}, {t.A, t.B}}};
  for (int i = 0; i < 3; ++i) {
    const auto& [u, v] = edges[i];
    CHECK(std::abs(cross(v - u, r.midpoints[i] - u)) < 1e-12);
    CHECK(dot(r.midpoints[i] - u, r.midpoints[i] - v) < 0.0);
  }
}

TEST_CASE("median report on random polygons agrees with the oracle") {
  oracle::Rng rng(37);
  for (int i = 0; i < 300; ++i) {
    const Polygon k = oracle::random_polygon(rng, rng.integer(3, 8));
    const Triangle t = oracle::random_triangle(rng, k, 1e-2, 3e-2);
    const double d = median_report(k, t).defect;
    const double ref = oracle::median_defect(k, t);
    CHECK(std::abs(d - ref) <= 1e-6 * ref + 1e-12);
  }
}

TEST_CASE("degenerate triangles are rejected") {
  CHECK(code_of([] { median_report(kDisk, Triangle{{0, 0}, {0.1, 0.1}, {0.2, 0.2}}); }) ==
        ErrorCode::DegenerateTriangle);
  CHECK(code_of([] { median_report(kDisk, Triangle{{0, 0}, {0.1, 0.1}, {1.2, 0.2}}); }) ==
        ErrorCode::PointsOutside);
}

TEST_CASE("concurrency defect of concurrent and skew lines") {
  const std::array<Line, 3> through_origin{line_through({0, 0}, {1, 0}), line_through({0, 0}, {0, 1}),
                                           line_through({0, 0}, {1, 1})};
  CHECK(concurrency_defect(through_origin, 1.0) < 1e-15);
  const std::array<Line, 3> skew{line_through({0, 0}, {1, 0}), line_through({0, 0}, {0, 1}),
                                 line_through({0, 0.5}, {0.5, 0})};
  CHECK(concurrency_defect(skew, 2.0) == doctest::Approx(0.25));
}
