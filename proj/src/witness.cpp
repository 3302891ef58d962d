#include "hilbert/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace hilbert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kUAttempts = 50;
constexpr int kUSamples = 1000;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_from_bits(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

bool well_inside(const ConvexBody& body, const Point& p, double margin) {
  return contains(body, p) && boundary_clearance(body, p) >= margin * diameter(body);
}

double triangle_defect(const ConvexBody& body, const Triangle& t) {
  if (!admissible_triangle(body, t)) return -std::numeric_limits<double>::infinity();
  try {
    return median_report(body, t).defect;
  } catch (const Error&) {
    return -std::numeric_limits<double>::infinity();
  }
}

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::DegenerateWitness, "witness: " + what);
}

}  // namespace

// ----------------------------------------------------------------------------
// Working ellipse and point selection
// ----------------------------------------------------------------------------

WorkingEllipse working_ellipse(const Polygon& k, int min_points, double tol) {
  const JohnResult john = max_area_inscribed_ellipse(k, tol);
  if (!john.converged) {
    throw Error(ErrorCode::NoConvergence, "working_ellipse: inscribed-ellipse solver did not converge");
  }
  auto contacts = contact_points(john, k, tol);
  if (static_cast<int>(contacts.size()) >= min_points) {
    return {john.ellipse, std::move(contacts), 0.0};
  }

  std::ostringstream counts;
  for (int j = 0; j < kEpsSteps; ++j) {
    const double eps = std::ldexp(kEpsStart, -j);
    const EllipseBody grown = inflate(john.ellipse, eps);
    auto pts = boundary_intersections(grown, k);
    if (static_cast<int>(pts.size()) >= min_points) {
      return {grown, std::move(pts), eps};
    }
    counts << (j ? "," : "") << eps << ':' << pts.size();
  }
  throw Error(ErrorCode::InflationFailed,
              "working_ellipse: no eps reached " + std::to_string(min_points) +
                  " boundary points (eps:count " + counts.str() + ")");
}

FivePoints select_five(std::span<const Point> points, const Point& center) {
  const std::size_t n = points.size();
  if (n < 5) throw Error(ErrorCode::TooFewPoints, "select_five: need at least 5 points");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) theta[i] = angle_about(center, points[i]);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return theta[a] < theta[b]; });
  std::vector<double> ang(n);
  for (std::size_t i = 0; i < n; ++i) ang[i] = theta[order[i]];

  constexpr double slack = 1e-12;
  // Lexicographically smallest sorted 5-set whose cyclic gaps are all >= g.
  auto pick = [&](double g) -> std::optional<std::array<std::size_t, 5>> {
    for (std::size_t i0 = 0; i0 < n; ++i0) {
      std::array<std::size_t, 5> idx{i0};
      std::size_t filled = 1;
      for (std::size_t j = i0 + 1; j < n && filled < 5; ++j) {
        if (ang[j] - ang[idx[filled - 1]] >= g - slack) idx[filled++] = j;
      }
      if (filled == 5 && ang[i0] + kTwoPi - ang[idx[4]] >= g - slack) return idx;
    }
    return std::nullopt;
  };

  std::vector<double> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      candidates.push_back(ang[j] - ang[i]);
      candidates.push_back(ang[i] + kTwoPi - ang[j]);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Feasibility is monotone in g: find the largest feasible candidate.
  std::size_t lo = 0;
  std::size_t hi = candidates.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (pick(candidates[mid])) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const auto chosen = pick(candidates[lo]);
  if (!chosen) throw Error(ErrorCode::TooFewPoints, "select_five: no admissible subset");
  const auto& idx = *chosen;

  std::array<double, 5> gaps{};
  for (int s = 0; s < 5; ++s) {
    gaps[s] = s < 4 ? ang[idx[s + 1]] - ang[idx[s]] : ang[idx[0]] + kTwoPi - ang[idx[4]];
  }
  int widest = 0;
  for (int s = 1; s < 5; ++s) {
    if (gaps[s] > gaps[widest] + slack) widest = s;
  }
  auto at = [&](int offset) { return points[order[idx[(widest + offset) % 5]]]; };
  return {at(1), at(2), at(4), at(0), at(3)};
}

// ----------------------------------------------------------------------------
// Exterior point and triangle
// ----------------------------------------------------------------------------

Point pick_u(const ConvexBody& k, const EllipseBody& e, const Point& p1, const Point& p4,
             const Point& p5, std::optional<Point> avoid, std::uint64_t rng_seed) {
  const Point c = e.center();
  const double diam = diameter(k);
  const double start = angle_about(c, p4);
  double span = angle_about(c, p1) - start;
  if (span <= 0.0) span += kTwoPi;

  // Additive recurrence on the plastic constant (R2 sequence).
  constexpr double g = 1.32471795724474602596;
  constexpr double a1 = 1.0 / g;
  constexpr double a2 = 1.0 / (g * g);
  const std::uint64_t mix = splitmix64(rng_seed);
  const double o1 = unit_from_bits(mix);
  const double o2 = unit_from_bits(splitmix64(mix));

  bool exterior_seen = false;
  for (int n = 0; n < kUSamples; ++n) {
    const double h1 = std::fmod(o1 + n * a1, 1.0);
    const double h2 = std::fmod(o2 + n * a2, 1.0);
    const double theta = start + h1 * span;
    const Point dir{std::cos(theta), std::sin(theta)};
    const double reach_e = line_interval(ConvexBody{e}, c, dir)[1];
    const auto [lo, reach_k] = line_interval(k, c, dir);
    if (!(lo < 0.0 && reach_k > 0.0)) continue;
    const double gap = reach_k - reach_e;
    if (!(gap > 1e-6 * diam)) continue;
    const Point u = c + dir * (reach_e + (0.1 + 0.8 * h2) * gap);
    if (!well_inside(k, u, kBoundaryMargin) || contains(ConvexBody{e}, u)) continue;
    exterior_seen = true;
    if (avoid) {
      if (dist(p5, u) <= 1e-12 * diam) continue;
      if (distance_to_line(line_through(p5, u), *avoid) < 1e-6 * diam) continue;
    }
    return u;
  }
  if (!exterior_seen) {
    throw Error(ErrorCode::NoExteriorRegion,
                "pick_u: no point of the body outside the ellipse in the p4-p1 sector");
  }
  throw Error(ErrorCode::AvoidanceFailed, "pick_u: every sample line passes through the avoided point");
}

TriangleConstruction construct_triangle(const FivePoints& pts, const Point& u) {
  const std::array<Point, 5> five{pts.p1, pts.p2, pts.p3, pts.p4, pts.p5};
  double scale = 0.0;
  for (const auto& a : five) {
    scale = std::max(scale, dist(a, u));
    for (const auto& b : five) scale = std::max(scale, dist(a, b));
  }
  const double area_tol = 1e-9 * scale * scale;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      for (int l = j + 1; l < 5; ++l) {
        if (std::abs(orient(five[i], five[j], five[l])) <= area_tol) {
          throw Error(ErrorCode::CollinearInputs, "construct_triangle: three of the five points are collinear");
        }
      }
    }
  }
  if (dist(pts.p5, u) <= 1e-12 * scale) {
    throw Error(ErrorCode::CollinearInputs, "construct_triangle: u coincides with p5");
  }

  const Line l13 = line_through(pts.p1, pts.p3);
  const Line l24 = line_through(pts.p2, pts.p4);
  const Line l5u = line_through(pts.p5, u);
  const Point A = intersect_lines(l13, l24);
  if (distance_to_line(l5u, A) <= 1e-9 * scale) {
    throw Error(ErrorCode::CollinearInputs, "construct_triangle: line p5u passes through A");
  }

  Point B;
  Point C;
  try {
    B = intersect_lines(l5u, l13);
    C = intersect_lines(l5u, l24);
  } catch (const Error&) {
    throw Error(ErrorCode::LineMissesChord, "construct_triangle: line p5u is parallel to a chord");
  }

  auto strictly_on = [](const Point& p, const Point& from, const Point& to) {
    const Point d = to - from;
    const double tau = dot(p - from, d) / dot(d, d);
    return tau > 1e-9 && tau < 1.0 - 1e-9;
  };
  if (!strictly_on(B, pts.p1, pts.p3) || !strictly_on(C, pts.p2, pts.p4)) {
    throw Error(ErrorCode::LineMissesChord, "construct_triangle: line p5u misses a chord segment");
  }
  const Point ray = u - pts.p5;
  const double sB = dot(B - pts.p5, ray);
  const double sC = dot(C - pts.p5, ray);
  if (!(sB > 0.0 && sC > 0.0)) {
    throw Error(ErrorCode::LineMissesChord, "construct_triangle: chords lie behind p5");
  }
  if (sC < sB) return {Triangle{A, B, C}, pts};
  // Reversing the boundary orientation swaps the roles of the two chords.
  const FivePoints mirrored{pts.p4, pts.p3, pts.p2, pts.p1, pts.p5};
  return {Triangle{A, C, B}, mirrored};
}

// ----------------------------------------------------------------------------
// Witness
// ----------------------------------------------------------------------------

WitnessReport witness(const Polygon& k, std::uint64_t rng_seed, double tol) {
  const ConvexBody body{k};
  const double diam = k.diameter();
  const WorkingEllipse work = working_ellipse(k, 5, tol);
  const EllipseBody& E = work.ellipse;
  const ConvexBody ebody{E};
  const FivePoints chosen = select_five(work.points, E.center());

  // The free arc p4 -> p1 must hold part of the body outside E. After
  // inflation that fails on arcs where E pokes out, so the other gaps are
  // tried in order of decreasing width.
  const std::array<Point, 5> ring{chosen.p1, chosen.p2, chosen.p5, chosen.p3, chosen.p4};
  std::array<int, 5> shifts{0, 1, 2, 3, 4};
  auto gap_before = [&](int s) {
    double g = angle_about(E.center(), ring[s]) - angle_about(E.center(), ring[(s + 4) % 5]);
    return g <= 0.0 ? g + kTwoPi : g;
  };
  std::stable_sort(shifts.begin(), shifts.end(), [&](int a, int b) { return gap_before(a) > gap_before(b); });

  std::string last_reason = "no attempt made";
  int attempts = 0;
  for (const int shift : shifts) {
    auto at = [&](int i) { return ring[(shift + i) % 5]; };
    const FivePoints five{at(0), at(1), at(3), at(4), at(2)};
    const Point A0 = intersect_lines(line_through(five.p1, five.p3), line_through(five.p2, five.p4));
    for (int attempt = 0; attempt < kUAttempts; ++attempt) {
      Point u;
      try {
        u = pick_u(body, E, five.p1, five.p4, five.p5, A0, derive_seed(rng_seed, attempt));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NoExteriorRegion) throw;
        last_reason = err.what();
        break;
      }
      ++attempts;

      TriangleConstruction built;
      try {
        built = construct_triangle(five, u);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::CollinearInputs && err.code() != ErrorCode::LineMissesChord) throw;
        last_reason = err.what();
        continue;
      }
      const Triangle& tri = built.triangle;
      const FivePoints& lab = built.labels;

      bool inside = true;
      for (const Point& v : {tri.A, tri.B, tri.C}) {
        inside = inside && well_inside(body, v, kBoundaryMargin) && well_inside(ebody, v, kBoundaryMargin);
      }
      if (!inside) {
        last_reason = "triangle not interior to body and ellipse";
        continue;
      }

      const Chord chord_e = chord_through(ebody, tri.C, tri.B);
      const Chord chord_k = chord_through(body, tri.C, tri.B);
      const double start_gap = std::max(dist(chord_e.a, lab.p5), dist(chord_k.a, lab.p5));
      if (start_gap > 1e-8 * diam) {
        last_reason = "chord through B and C misses p5 by " + std::to_string(start_gap / diam) + " diameters";
        continue;
      }

      const ChordFrame frame = make_chord_frame(lab.p5, u, tri.C);
      ChartCoords lc;
      lc.b = chord_coordinate(frame, tri.B);
      lc.x = chord_coordinate(frame, chord_e.b);
      lc.x_prime = chord_coordinate(frame, chord_k.b);
      if (!(1.0 < lc.b && lc.b < lc.x && lc.x < lc.x_prime) || lc.x_prime - lc.x < 1e-9) {
        last_reason = "chart order 1 < b < x < x' fails";
        continue;
      }
      lc.m = midpoint_line_coords(1.0, lc.b, lc.x);
      lc.m_prime = midpoint_line_coords(1.0, lc.b, lc.x_prime);

      const Point mid_e = midpoint(ebody, tri.B, tri.C);
      const Point mid_k = midpoint(body, tri.B, tri.C);
      const double chart_gap = std::max(std::abs(chord_coordinate(frame, mid_e) - lc.m),
                                        std::abs(chord_coordinate(frame, mid_k) - lc.m_prime));
      if (chart_gap > 1e-9) {
        last_reason = "chart midpoint off by " + std::to_string(chart_gap);
        continue;
      }
      if (dist(midpoint(ebody, tri.A, tri.C), midpoint(body, tri.A, tri.C)) > 1e-9 * diam ||
          dist(midpoint(ebody, tri.A, tri.B), midpoint(body, tri.A, tri.B)) > 1e-9 * diam) {
        last_reason = "midpoints of AB and AC differ between the ellipse and the body";
        continue;
      }

      const MedianReport med_k = median_report(body, tri);
      if (!(med_k.defect > 0.0) || !(lc.m > lc.m_prime)) {
        last_reason = "defect vanished numerically";
        continue;
      }

      WitnessReport r{.body = body, .ellipse_E = E};
      r.eps_used = work.eps;
      r.boundary_points = work.points;
      r.five_points = lab;
      r.u = u;
      r.A = tri.A;
      r.B = tri.B;
      r.C = tri.C;
      r.q = chord_e.b;
      r.q_prime = chord_k.b;
      r.line_coords = lc;
      r.midpoint_ellipse = mid_e;
      r.midpoint_body = mid_k;
      r.medians = med_k;
      r.defect = med_k.defect;
      r.defect_ellipse = median_report(ebody, tri).defect;
      r.attempts = attempts;
      return r;
    }
  }
  if (attempts == 0) throw Error(ErrorCode::NoExteriorRegion, "witness: " + last_reason);
  fail("no admissible u after " + std::to_string(attempts) + " attempts (" + last_reason + ")");
}

WitnessReport witness(const ConvexBody& k, std::uint64_t rng_seed, double tol) {
  if (const auto* poly = std::get_if<Polygon>(&k)) return witness(*poly, rng_seed, tol);
  // An ellipse is its own inscribed ellipse; the body leaves no room outside it.
  const auto& e = std::get<EllipseBody>(k);
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(e.from_unit({std::cos(kTwoPi * i / 5), std::sin(kTwoPi * i / 5)}));
  const FivePoints five = select_five(pts, e.center());
  pick_u(k, e, five.p1, five.p4, five.p5, std::nullopt, rng_seed);
  throw Error(ErrorCode::NoExteriorRegion, "witness: body is an ellipse");
}

// ----------------------------------------------------------------------------
// Randomized scan and local refinement
// ----------------------------------------------------------------------------

bool admissible_triangle(const ConvexBody& body, const Triangle& t) {
  for (const Point& v : {t.A, t.B, t.C}) {
    if (!well_inside(body, v, kScanMargin)) return false;
  }
  const double d = t.diameter();
  return d > 0.0 && std::abs(t.twice_area()) >= kScanMinShape * d * d;
}

ScanResult defect_scan(const ConvexBody& body, int samples, std::uint64_t rng_seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "defect_scan: samples must be >= 1");
  const auto [lo, hi] = bounding_box(body);

  ScanResult best{{}, -1.0};
  for (int j = 0; j < samples; ++j) {
    std::mt19937_64 rng(derive_seed(rng_seed, static_cast<std::uint64_t>(j)));
    std::uniform_real_distribution<double> ux(lo.x, hi.x);
    std::uniform_real_distribution<double> uy(lo.y, hi.y);
    auto draw = [&] {
      for (;;) {
        const Point p{ux(rng), uy(rng)};
        if (well_inside(body, p, kScanMargin)) return p;
      }
    };
    Triangle t;
    do {
      t = {draw(), draw(), draw()};
    } while (!admissible_triangle(body, t));
    const double d = median_report(body, t).defect;
    if (d > best.defect) best = {t, d};
  }
  return best;
}

ScanResult refine(const ConvexBody& body, const Triangle& t, int iters) {
  using Vertex = std::array<double, 6>;
  auto to_triangle = [](const Vertex& v) { return Triangle{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}}; };
  const ScanResult start{t, median_report(body, t).defect};
  if (iters <= 0) return start;

  // Simplex of 7 vertices in R^6, sorted best (largest defect) first.
  const double step = 0.02 * diameter(body);
  const Vertex x0{t.A.x, t.A.y, t.B.x, t.B.y, t.C.x, t.C.y};
  std::vector<std::pair<double, Vertex>> simplex{{start.defect, x0}};
  for (int i = 0; i < 6; ++i) {
    Vertex v = x0;
    v[i] += step;
    simplex.emplace_back(triangle_defect(body, to_triangle(v)), v);
  }
  auto by_value = [](const auto& a, const auto& b) { return a.first > b.first; };
  auto affine = [](const Vertex& a, const Vertex& b, double s) {
    Vertex r;
    for (int i = 0; i < 6; ++i) r[i] = a[i] + s * (b[i] - a[i]);
    return r;
  };

  for (int it = 0; it < iters; ++it) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    Vertex centroid{};
    for (int s = 0; s < 6; ++s) {
      for (int i = 0; i < 6; ++i) centroid[i] += simplex[s].second[i] / 6.0;
    }
    const auto& worst = simplex.back();
    const Vertex xr = affine(centroid, worst.second, -1.0);
    const double fr = triangle_defect(body, to_triangle(xr));
    if (fr > simplex.front().first) {
      const Vertex xe = affine(centroid, worst.second, -2.0);
      const double fe = triangle_defect(body, to_triangle(xe));
      simplex.back() = fe > fr ? std::make_pair(fe, xe) : std::make_pair(fr, xr);
    } else if (fr > simplex[5].first) {
      simplex.back() = {fr, xr};
    } else {
      const Vertex xc = affine(centroid, worst.second, 0.5);
      const double fc = triangle_defect(body, to_triangle(xc));
      if (fc > worst.first) {
        simplex.back() = {fc, xc};
      } else {
        for (std::size_t s = 1; s < simplex.size(); ++s) {
          simplex[s].second = affine(simplex.front().second, simplex[s].second, 0.5);
          simplex[s].first = triangle_defect(body, to_triangle(simplex[s].second));
        }
      }
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  if (!(simplex.front().first > start.defect)) return start;
  return {to_triangle(simplex.front().second), simplex.front().first};
}

}  // namespace hilbert
