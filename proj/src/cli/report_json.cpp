#include <fstream>
#include <sstream>

#include "hilbert/cli.hpp"

namespace hilbert::cli {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::SchemaMismatch, "body schema: " + what);
}

double number_at(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) schema_error(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

json pair_at(const json& j, const char* key) {
  if (!j.contains(key)) schema_error(std::string("missing '") + key + "'");
  return j.at(key);
}

}  // namespace

json to_json(const Point& p) { return json::array({p.x, p.y}); }

Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    schema_error("a point must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const EllipseBody& e) {
  const auto axes = e.semi_axes();
  return {{"type", "ellipse"},
          {"center", to_json(e.center())},
          {"semi_axes", json::array({axes[0], axes[1]})},
          {"rotation_rad", e.rotation()}};
}

json to_json(const ConvexBody& body) {
  if (const auto* e = std::get_if<EllipseBody>(&body)) return to_json(*e);
  json verts = json::array();
  for (const auto& v : std::get<Polygon>(body).vertices()) verts.push_back(to_json(v));
  return {{"type", "polygon"}, {"vertices", verts}};
}

ConvexBody body_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    schema_error("expected an object with a string 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "polygon") {
    const json& vs = pair_at(j, "vertices");
    if (!vs.is_array()) schema_error("'vertices' must be an array");
    std::vector<Point> pts;
    for (const auto& v : vs) pts.push_back(point_from_json(v));
    return Polygon(std::move(pts));
  }
  if (type == "ellipse") {
    const Point center = point_from_json(pair_at(j, "center"));
    const Point axes = point_from_json(pair_at(j, "semi_axes"));
    const double rot = number_at(j, "rotation_rad");
    if (!(axes.x > 0.0 && axes.y > 0.0)) {
      throw Error(ErrorCode::InvalidBody, "ellipse semi-axes must be positive");
    }
    return EllipseBody::from_axes(center, axes.x, axes.y, rot);
  }
  schema_error("unknown body type '" + type + "'");
}

ConvexBody load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open body file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaMismatch, std::string("body file is not valid JSON: ") + e.what());
  }
  return body_from_json(j);
}

json to_json(const Triangle& t) {
  return {{"A", to_json(t.A)}, {"B", to_json(t.B)}, {"C", to_json(t.C)}};
}

json to_json(const MedianReport& r) {
  json mids = json::array();
  json lines = json::array();
  json meets = json::array();
  for (const auto& p : r.midpoints) mids.push_back(to_json(p));
  for (const auto& l : r.medians) lines.push_back({l.alpha, l.beta, l.gamma});
  for (const auto& p : r.pairwise_meets) meets.push_back(to_json(p));
  return {{"midpoints", mids}, {"medians", lines}, {"pairwise_meets", meets}, {"defect", r.defect}};
}

json to_json(const JohnResult& r) {
  json contacts = json::array();
  for (const auto& c : r.contacts) {
    contacts.push_back({{"point", to_json(c.point)}, {"edge_index", c.edge_index}});
  }
  return {{"ellipse", to_json(r.ellipse)},
          {"contacts", contacts},
          {"objective", r.objective},
          {"kkt_residual", r.kkt_residual},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"audit", {{"samples", r.audit_samples}, {"max_log_det_gain", r.audit_max_gain}}}};
}

json to_json(const WitnessReport& r) {
  json pts = json::array();
  for (const auto& p : r.boundary_points) pts.push_back(to_json(p));
  const auto& f = r.five_points;
  const auto& lc = r.line_coords;
  return {{"body", to_json(r.body)},
          {"ellipse_E", to_json(r.ellipse_E)},
          {"eps_used", r.eps_used},
          {"boundary_points", pts},
          {"five_points",
           {{"p1", to_json(f.p1)}, {"p2", to_json(f.p2)}, {"p3", to_json(f.p3)},
            {"p4", to_json(f.p4)}, {"p5", to_json(f.p5)}}},
          {"u", to_json(r.u)},
          {"A", to_json(r.A)},
          {"B", to_json(r.B)},
          {"C", to_json(r.C)},
          {"q", to_json(r.q)},
          {"q_prime", to_json(r.q_prime)},
          {"line_coords",
           {{"b", lc.b}, {"x", lc.x}, {"x_prime", lc.x_prime}, {"m", lc.m}, {"m_prime", lc.m_prime}}},
          {"midpoint_ellipse", to_json(r.midpoint_ellipse)},
          {"midpoint_body", to_json(r.midpoint_body)},
          {"medians", to_json(r.medians)},
          {"defect", r.defect},
          {"defect_ellipse", r.defect_ellipse},
          {"attempts", r.attempts}};
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

}  // namespace hilbert::cli
