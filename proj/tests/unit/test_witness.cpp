#include <cmath>
#include <numbers>

#include <doctest.h>

#include "error_code.hpp"
#include "hilbert/john_ellipse.hpp"
#include "hilbert/witness.hpp"
#include "oracles.hpp"

using namespace hilbert;

namespace {

const Polygon kSquare({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
const Polygon kTriangle({{0, 0}, {1, 0}, {0, 1}});
const EllipseBody kDisk = EllipseBody::from_axes({0, 0}, 1, 1, 0);

Polygon regular(int n, double phase = 0.0) {
  std::vector<Point> v;
  for (int i = 0; i < n; ++i) {
    const double t = phase + 2.0 * std::numbers::pi * i / n;
    v.push_back({std::cos(t), std::sin(t)});
  }
  return Polygon(v);
}

std::vector<Point> on_circle(std::initializer_list<double> degrees) {
  std::vector<Point> pts;
  for (double d : degrees) pts.push_back({std::cos(d * std::numbers::pi / 180), std::sin(d * std::numbers::pi / 180)});
  return pts;
}

std::array<Point, 5> as_array(const FivePoints& f) { return {f.p1, f.p2, f.p3, f.p4, f.p5}; }

// Cyclic order about c, counterclockwise, must read p1, p2, p5, p3, p4.
void check_labels(const FivePoints& f, const Point& c) {
  const std::array<Point, 5> ring{f.p1, f.p2, f.p5, f.p3, f.p4};
  double turned = 0.0;
  for (int i = 0; i < 5; ++i) {
    double step = angle_about(c, ring[(i + 1) % 5]) - angle_about(c, ring[i]);
    if (step <= 0) step += 2 * std::numbers::pi;
    turned += step;
  }
  CHECK(turned == doctest::Approx(2 * std::numbers::pi));
}

void check_report(const WitnessReport& r, const ConvexBody& body) {
  const ChartCoords& lc = r.line_coords;
  CHECK(1.0 < lc.b);
  CHECK(lc.b < lc.x);
  CHECK(lc.x < lc.x_prime);
  CHECK(lc.x_prime - lc.x >= 1e-9);
  CHECK(lc.m > lc.m_prime);
  CHECK(lc.m == doctest::Approx(midpoint_line_coords(1.0, lc.b, lc.x)).epsilon(1e-15));
  CHECK(lc.m_prime == doctest::Approx(midpoint_line_coords(1.0, lc.b, lc.x_prime)).epsilon(1e-15));
  CHECK(r.defect > 0.0);
  CHECK(r.defect == doctest::Approx(r.medians.defect));
  CHECK(r.defect_ellipse < 1e-8);
  for (const Point& v : {r.A, r.B, r.C}) {
    CHECK(contains(body, v));
    CHECK(contains(r.ellipse_E, v));
  }
  // chart: p5 at 0, C at 1
  const ChordFrame f = make_chord_frame(r.five_points.p5, r.u, r.C);
  CHECK(chord_coordinate(f, r.B, 1e-9) == doctest::Approx(lc.b).epsilon(1e-9));
  CHECK(chord_coordinate(f, r.q, 1e-9) == doctest::Approx(lc.x).epsilon(1e-9));
  CHECK(chord_coordinate(f, r.q_prime, 1e-9) == doctest::Approx(lc.x_prime).epsilon(1e-9));
  // m and m' are the chart images of the Hilbert midpoints of BC in E and in K
  const double scale = f.unit_length * lc.b;
  CHECK(std::abs(chord_coordinate(f, midpoint(r.ellipse_E, r.C, r.B), 1e-9) - lc.m) * f.unit_length < 1e-9 * scale + 1e-9);
  CHECK(std::abs(chord_coordinate(f, oracle::midpoint(body, r.C, r.B), 1e-9) - lc.m_prime) * f.unit_length <
        1e-9 * scale + 1e-9);
  // B' and C' agree under both metrics
  const double d = diameter(body);
  CHECK(dist(midpoint(r.ellipse_E, r.A, r.C), midpoint(body, r.A, r.C)) < 1e-9 * d);
  CHECK(dist(midpoint(r.ellipse_E, r.A, r.B), midpoint(body, r.A, r.B)) < 1e-9 * d);
}

}  // namespace

TEST_CASE("working ellipse: square, triangle, pentagon") {
  const WorkingEllipse sq = working_ellipse(kSquare);
  CHECK(sq.eps > 0.0);
  CHECK(sq.points.size() == 8);
  const WorkingEllipse tri = working_ellipse(kTriangle);
  CHECK(tri.eps > 0.0);
  CHECK(tri.points.size() == 6);
  const WorkingEllipse pent = working_ellipse(regular(5, 0.1));
  CHECK(pent.eps == 0.0);
  CHECK(pent.points.size() == 5);
  for (const auto& w : {sq, tri}) {
    CHECK(w.eps <= kEpsStart);
    CHECK(std::log2(kEpsStart / w.eps) == doctest::Approx(std::round(std::log2(kEpsStart / w.eps))));
  }
}

TEST_CASE("inflation exit: small inflations keep at least the contact count") {
  oracle::Rng rng(51);
  for (int i = 0; i < 30; ++i) {
    const Polygon k = oracle::random_polygon(rng, rng.integer(3, 8));
    const JohnResult r = max_area_inscribed_ellipse(k);
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const auto pts = boundary_intersections(inflate(r.ellipse, eps), k);
      CHECK(!pts.empty());
      CHECK(pts.size() >= r.contacts.size());
    }
  }
}

TEST_CASE("select five: exact count keeps the points") {
  const auto pts = on_circle({10, 80, 150, 200, 300});
  const FivePoints f = select_five(pts, {0, 0});
  for (const auto& p : pts) {
    const auto got = as_array(f);
    CHECK(std::count(got.begin(), got.end(), p) == 1);
  }
  check_labels(f, {0, 0});
  // widest gap (200 -> 300 is 100 degrees) runs from p4 to p1
  CHECK(f.p4 == pts[3]);
  CHECK(f.p1 == pts[4]);
}

TEST_CASE("select five matches brute force") {
  oracle::Rng rng(52);
  for (int i = 0; i < 300; ++i) {
    const int n = rng.integer(5, 11);
    std::vector<Point> pts;
    for (int j = 0; j < n; ++j) {
      const double t = rng.uniform(0, 2 * std::numbers::pi);
      pts.push_back({std::cos(t), std::sin(t)});
    }
    const FivePoints f = select_five(pts, {0, 0});
    const auto got = as_array(f);
    CHECK(oracle::min_cyclic_gap(got, {0, 0}) == doctest::Approx(oracle::best_five_gap(pts, {0, 0})).epsilon(1e-12));
    check_labels(f, {0, 0});
  }
  const auto eight = on_circle({0, 45, 90, 135, 180, 225, 270, 315});
  const auto f8 = as_array(select_five(eight, {0, 0}));
  CHECK(oracle::min_cyclic_gap(f8, {0, 0}) >= std::numbers::pi / 4 - 1e-12);
}

TEST_CASE("select five drops a near-duplicate") {
  const auto pts = on_circle({0, 60, 120, 180, 240, 240.001});
  const auto got = as_array(select_five(pts, {0, 0}));
  const int dup = std::count(got.begin(), got.end(), pts[4]) + std::count(got.begin(), got.end(), pts[5]);
  CHECK(dup == 1);
  CHECK(code_of([] { select_five(on_circle({0, 90, 180, 270}), {0, 0}); }) == ErrorCode::TooFewPoints);
}

TEST_CASE("pick u lies in the free sector outside the ellipse") {
  const WorkingEllipse w = working_ellipse(kSquare);
  const FivePoints f = select_five(w.points, w.ellipse.center());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Point u = pick_u(kSquare, w.ellipse, f.p1, f.p4, f.p5, std::nullopt, seed);
    CHECK(contains(kSquare, u));
    CHECK_FALSE(contains(w.ellipse, u));
    const Point c = w.ellipse.center();
    double span = angle_about(c, f.p1) - angle_about(c, f.p4);
    if (span <= 0) span += 2 * std::numbers::pi;
    double off = angle_about(c, u) - angle_about(c, f.p4);
    if (off < 0) off += 2 * std::numbers::pi;
    CHECK(off < span);
    CHECK(pick_u(kSquare, w.ellipse, f.p1, f.p4, f.p5, std::nullopt, seed) == u);
  }
}

TEST_CASE("pick u avoids a point on the first sample line") {
  const WorkingEllipse w = working_ellipse(kSquare);
  const FivePoints f = select_five(w.points, w.ellipse.center());
  const Point first = pick_u(kSquare, w.ellipse, f.p1, f.p4, f.p5, std::nullopt, 3);
  const Point avoid = (first + f.p5) / 2.0;
  const Point second = pick_u(kSquare, w.ellipse, f.p1, f.p4, f.p5, avoid, 3);
  CHECK_FALSE(second == first);
  CHECK(distance_to_line(line_through(f.p5, second), avoid) >= 1e-6 * kSquare.diameter());
}

TEST_CASE("pick u fails when the body is the ellipse") {
  const auto pts = on_circle({0, 72, 144, 216, 288});
  const FivePoints f = select_five(pts, {0, 0});
  CHECK(code_of([&] { pick_u(kDisk, kDisk, f.p1, f.p4, f.p5, std::nullopt, 0); }) == ErrorCode::NoExteriorRegion);
}

TEST_CASE("construct triangle") {
  const Polygon k = regular(7, 0.2);
  const WorkingEllipse w = working_ellipse(k, 5);
  const FivePoints f = select_five(w.points, w.ellipse.center());
  const Point u = pick_u(k, w.ellipse, f.p1, f.p4, f.p5, std::nullopt, 4);
  const TriangleConstruction tc = construct_triangle(f, u);
  const Triangle& t = tc.triangle;
  const FivePoints& l = tc.labels;
  CHECK(std::abs(orient(l.p1, l.p3, t.A)) < 1e-12);
  CHECK(std::abs(orient(l.p2, l.p4, t.A)) < 1e-12);
  CHECK(std::abs(orient(l.p1, l.p3, t.B)) < 1e-12);
  CHECK(std::abs(orient(l.p5, u, t.B)) < 1e-12);
  CHECK(std::abs(orient(l.p2, l.p4, t.C)) < 1e-12);
  CHECK(dist(l.p5, t.C) < dist(l.p5, t.B));
  for (const Point& v : {t.A, t.B, t.C}) {
    CHECK(contains(k, v));
    CHECK(contains(w.ellipse, v));
  }
  CHECK(code_of([&] { construct_triangle(f, t.A + (t.A - l.p5)); }) == ErrorCode::CollinearInputs);
  const FivePoints collinear{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 2}};
  CHECK(code_of([&] { construct_triangle(collinear, {5, 5}); }) == ErrorCode::CollinearInputs);
}

TEST_CASE("symmetric square construction puts A on an axis") {
  // labels mirrored by x -> -x: p1 <-> p4, p2 <-> p3, p5 on the axis
  const double r = std::sqrt(1.1);
  const double c = std::sqrt(0.1);
  const FivePoints f{{1, c}, {c, 1}, {-c, 1}, {-1, c}, {0, r}};
  const Triangle t = construct_triangle(f, {0.8, -0.9}).triangle;
  CHECK(std::abs(t.A.x) < 1e-12);
  CHECK(contains(kSquare, t.B));
  CHECK(contains(kSquare, t.C));
}

TEST_CASE("witness on the square") {
  const WitnessReport r = witness(kSquare, 7);
  check_report(r, kSquare);
  CHECK(r.eps_used > 0.0);
  CHECK(r.boundary_points.size() == 8);
  CHECK(r.attempts >= 1);
}

TEST_CASE("witness on the triangle and random polygons") {
  check_report(witness(kTriangle, 0), kTriangle);
  oracle::Rng rng(53);
  for (int i = 0; i < 30; ++i) {
    const Polygon k = oracle::random_polygon(rng, rng.integer(3, 12));
    check_report(witness(k, i), k);
  }
}

TEST_CASE("witness defect on fine regular polygons stays small") {
  const double coarse = witness(regular(8), 0).defect;
  const double fine = witness(regular(256), 0).defect;
  CHECK(fine > 0.0);
  CHECK(fine < coarse);
  CHECK(fine < 1e-3);
}

TEST_CASE("witness is deterministic") {
  const WitnessReport a = witness(kSquare, 11);
  const WitnessReport b = witness(kSquare, 11);
  CHECK(a.u == b.u);
  CHECK(a.defect == b.defect);
  CHECK(a.line_coords.m_prime == b.line_coords.m_prime);
}

TEST_CASE("witness refuses an ellipse body") {
  CHECK(code_of([] { witness(ConvexBody{kDisk}, 0); }) == ErrorCode::NoExteriorRegion);
}

TEST_CASE("defect scan") {
  const ScanResult disk = defect_scan(kDisk, 1000, 1);
  CHECK(disk.defect < 1e-8);
  const ScanResult sq = defect_scan(kSquare, 2000, 1);
  CHECK(sq.defect > 1e-3);
  CHECK(admissible_triangle(kSquare, sq.triangle));
  CHECK(sq.defect == median_report(kSquare, sq.triangle).defect);
  const ScanResult again = defect_scan(kSquare, 2000, 1);
  CHECK(again.triangle.A == sq.triangle.A);
  CHECK(again.defect == sq.defect);
  const ScanResult one = defect_scan(kSquare, 1, 5);
  CHECK(one.defect == median_report(kSquare, one.triangle).defect);
  CHECK(code_of([] { defect_scan(kSquare, 0, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("refine never lowers the defect") {
  const ScanResult start = defect_scan(kSquare, 200, 2);
  const ScanResult same = refine(kSquare, start.triangle, 0);
  CHECK(same.triangle.A == start.triangle.A);
  CHECK(same.defect == start.defect);
  const ScanResult up = refine(kSquare, start.triangle, 100);
  CHECK(up.defect >= start.defect);
  CHECK(admissible_triangle(kSquare, up.triangle));
  const ScanResult flat = refine(kDisk, defect_scan(kDisk, 50, 3).triangle, 100);
  CHECK(flat.defect < 1e-8);
}
