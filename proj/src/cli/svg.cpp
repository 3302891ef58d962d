#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "hilbert/cli.hpp"

namespace hilbert::cli {

namespace {

constexpr double kViewport = 1000.0;
constexpr double kMargin = 0.05 * kViewport;

struct Stroke {
  std::vector<Point> pts;
  bool closed = false;
  std::string style;
};

struct Label {
  Point at;
  std::string text;
  std::string color;
};

class Figure {
 public:
  void path(std::vector<Point> pts, bool closed, std::string style) {
    for (const auto& p : pts) extend(p);
    strokes_.push_back({std::move(pts), closed, std::move(style)});
  }
  void segment(const Point& a, const Point& b, const std::string& style) { path({a, b}, false, style); }
  void point(const Point& p, const std::string& text, const std::string& color = "black") {
    extend(p);
    labels_.push_back({p, text, color});
  }
  void body(const ConvexBody& b, const std::string& style) {
    if (const auto* k = std::get_if<Polygon>(&b)) {
      path(k->vertices(), true, style);
    } else {
      ellipse(std::get<EllipseBody>(b), style);
    }
  }
  void ellipse(const EllipseBody& e, const std::string& style) {
    std::vector<Point> pts;
    for (int i = 0; i < 256; ++i) {
      const double t = 2.0 * std::numbers::pi * i / 256.0;
      pts.push_back(e.from_unit({std::cos(t), std::sin(t)}));
    }
    path(std::move(pts), true, style);
  }

  std::string str(const std::string& title) const {
    const double w = std::max(hi_.x - lo_.x, 1e-12);
    const double h = std::max(hi_.y - lo_.y, 1e-12);
    const double scale = (kViewport - 2.0 * kMargin) / std::max(w, h);
    const double ox = kMargin + 0.5 * ((kViewport - 2.0 * kMargin) - w * scale);
    const double oy = kMargin + 0.5 * ((kViewport - 2.0 * kMargin) - h * scale);
    auto map = [&](const Point& p) {
      return Point{ox + (p.x - lo_.x) * scale, kViewport - (oy + (p.y - lo_.y) * scale)};
    };

    std::ostringstream s;
    s << std::fixed << std::setprecision(2);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
    s << "<title>" << title << "</title>\n";
    s << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
    for (const auto& st : strokes_) {
      s << "<path d=\"";
      for (std::size_t i = 0; i < st.pts.size(); ++i) {
        const Point q = map(st.pts[i]);
        s << (i ? " L " : "M ") << q.x << ' ' << q.y;
      }
      if (st.closed) s << " Z";
      s << "\" fill=\"none\" " << st.style << "/>\n";
    }
    for (const auto& l : labels_) {
      const Point q = map(l.at);
      s << "<circle cx=\"" << q.x << "\" cy=\"" << q.y << "\" r=\"4\" fill=\"" << l.color << "\"/>\n";
      s << "<text x=\"" << q.x + 7 << "\" y=\"" << q.y - 7
        << "\" font-family=\"serif\" font-size=\"20\" fill=\"" << l.color << "\">" << l.text << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
  }

 private:
  void extend(const Point& p) {
    lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
    hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
  }

  std::vector<Stroke> strokes_;
  std::vector<Label> labels_;
  Point lo_{INFINITY, INFINITY};
  Point hi_{-INFINITY, -INFINITY};
};

const std::string kBodyStyle = "stroke=\"black\" stroke-width=\"2\"";
const std::string kEllipseStyle = "stroke=\"#1f77b4\" stroke-width=\"2\"";
const std::string kInflatedStyle = "stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"8 6\"";
const std::string kChordStyle = "stroke=\"#555555\" stroke-width=\"1.5\"";
const std::string kMedianStyle = "stroke=\"#2ca02c\" stroke-width=\"1.5\"";

Point pt(const json& report, const char* key) { return point_from_json(report.at(key)); }

void draw_triangle(Figure& fig, const json& tri, const json& medians) {
  const Point A = pt(tri, "A");
  const Point B = pt(tri, "B");
  const Point C = pt(tri, "C");
  fig.path({A, B, C}, true, kChordStyle);
  fig.point(A, "A");
  fig.point(B, "B");
  fig.point(C, "C");
  const auto& mids = medians.at("midpoints");
  const std::array<Point, 3> verts{A, B, C};
  const std::array<const char*, 3> names{"A′", "B′", "C′"};
  for (int i = 0; i < 3; ++i) {
    const Point m = point_from_json(mids.at(i));
    fig.segment(verts[i], m, kMedianStyle);
    fig.point(m, names[i], "#2ca02c");
  }
}

std::string render(const json& report) {
  const std::string kind = report.at("kind").get<std::string>();
  const ConvexBody body = body_from_json(report.at("body"));
  Figure fig;
  fig.body(body, kBodyStyle);

  if (kind == "distance" || kind == "midpoint") {
    const json& chord = report.at("chord");
    fig.segment(pt(chord, "a"), pt(chord, "b"), kChordStyle);
    fig.point(pt(chord, "a"), "a");
    fig.point(pt(chord, "b"), "b");
    fig.point(pt(chord, "p"), "x", "#1f77b4");
    fig.point(pt(chord, "q"), "y", "#1f77b4");
    if (kind == "midpoint") fig.point(pt(report, "midpoint"), "m", "#2ca02c");
    return fig.str(kind == "distance" ? "Hilbert distance" : "Hilbert midpoint");
  }
  if (kind == "medians" || kind == "scan") {
    draw_triangle(fig, report.at("triangle"), report.at("medians"));
    return fig.str("Hilbert medians");
  }
  if (kind == "john" || kind == "inflate") {
    const ConvexBody e = body_from_json(report.at("ellipse"));
    fig.body(e, kEllipseStyle);
    if (kind == "john") {
      for (const auto& c : report.at("contacts")) fig.point(point_from_json(c.at("point")), "", "#1f77b4");
      return fig.str("Maximal-area inscribed ellipse");
    }
    fig.body(body_from_json(report.at("ellipse_inflated")), kInflatedStyle);
    for (const auto& p : report.at("intersections")) fig.point(point_from_json(p), "", "#d62728");
    return fig.str("Inflated ellipse");
  }
  if (kind == "witness") {
    fig.body(body_from_json(report.at("ellipse_E")), kEllipseStyle);
    const json& five = report.at("five_points");
    const Point p1 = pt(five, "p1"), p2 = pt(five, "p2"), p3 = pt(five, "p3"), p4 = pt(five, "p4"),
                p5 = pt(five, "p5");
    fig.segment(p1, p3, kChordStyle);
    fig.segment(p2, p4, kChordStyle);
    fig.segment(p5, pt(report, "q_prime"), kChordStyle);
    fig.point(p1, "p1");
    fig.point(p2, "p2");
    fig.point(p3, "p3");
    fig.point(p4, "p4");
    fig.point(p5, "p5");
    fig.point(pt(report, "u"), "u", "#d62728");
    fig.point(pt(report, "q"), "q", "#1f77b4");
    fig.point(pt(report, "q_prime"), "q′", "#d62728");
    json tri = {{"A", report.at("A")}, {"B", report.at("B")}, {"C", report.at("C")}};
    draw_triangle(fig, tri, report.at("medians"));
    fig.point(pt(report, "midpoint_ellipse"), "", "#1f77b4");
    return fig.str("Construction of triangle ABC");
  }
  throw Error(ErrorCode::SchemaMismatch, "render: unknown report kind '" + kind + "'");
}

}  // namespace

std::string render_svg(const json& report) {
  try {
    return render(report);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaMismatch, std::string("render: report does not match its kind: ") + e.what());
  }
}

}  // namespace hilbert::cli
