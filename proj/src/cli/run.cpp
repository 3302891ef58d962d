#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hilbert/cli.hpp"

namespace hilbert::cli {

namespace {

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + ": '" + text + "' is not a list of numbers");
    }
  }
  if (out.size() != count) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": expected " + std::to_string(count) + " comma-separated numbers");
  }
  return out;
}

Point parse_point(const std::string& text, const char* what) {
  const auto v = parse_numbers(text, 2, what);
  return {v[0], v[1]};
}

const Polygon& require_polygon(const ConvexBody& body, const char* command) {
  const auto* k = std::get_if<Polygon>(&body);
  if (!k) throw Error(ErrorCode::InvalidBody, std::string(command) + " requires a polygon body");
  return *k;
}

template <class T>
const T& require(const std::optional<T>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::InvalidArgument, std::string("missing required flag ") + flag);
  return *v;
}

json chord_json(const Chord& c) {
  return {{"a", to_json(c.a)}, {"p", to_json(c.p)}, {"q", to_json(c.q)}, {"b", to_json(c.b)}};
}

struct Outcome {
  json report;
  std::optional<Error> soft_failure;  // report is still written
};

Outcome execute(const RunConfig& cfg) {
  if (cfg.command == Command::Render) {
    std::ifstream in(cfg.report_path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open report '" + cfg.report_path + "'");
    json report;
    try {
      in >> report;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::SchemaMismatch, std::string("report is not valid JSON: ") + e.what());
    }
    return {report, std::nullopt};
  }

  const ConvexBody body = load_body(cfg.body_path);
  json r = {{"body", to_json(body)}};

  switch (cfg.command) {
    case Command::Dist: {
      const Point p = require(cfg.p, "--p");
      const Point q = require(cfg.q, "--q");
      r["kind"] = "distance";
      r["p"] = to_json(p);
      r["q"] = to_json(q);
      r["distance"] = distance(body, p, q);
      if (!(p == q)) {
        const Chord c = chord_through(body, p, q);
        r["chord"] = chord_json(c);
        r["cross_ratio"] = cross_ratio(c.a, c.p, c.q, c.b);
      }
      return {r, std::nullopt};
    }
    case Command::Midpoint: {
      const Point p = require(cfg.p, "--p");
      const Point q = require(cfg.q, "--q");
      const Point m = midpoint(body, p, q);
      r["kind"] = "midpoint";
      r["p"] = to_json(p);
      r["q"] = to_json(q);
      r["midpoint"] = to_json(m);
      r["distance_pm"] = distance(body, p, m);
      r["distance_mq"] = distance(body, m, q);
      if (!(p == q)) r["chord"] = chord_json(chord_through(body, p, q));
      return {r, std::nullopt};
    }
    case Command::Medians: {
      const Triangle& t = require(cfg.triangle, "--triangle");
      const MedianReport m = median_report(body, t);
      r["kind"] = "medians";
      r["triangle"] = to_json(t);
      r["medians"] = to_json(m);
      r["defect"] = m.defect;
      return {r, std::nullopt};
    }
    case Command::John: {
      const Polygon& k = require_polygon(body, "john");
      const JohnResult john = max_area_inscribed_ellipse(k, cfg.tol);
      r.update(to_json(john));
      r["kind"] = "john";
      if (!john.converged) {
        return {r, Error(ErrorCode::NoConvergence, "john: iteration cap reached; best iterate reported")};
      }
      return {r, std::nullopt};
    }
    case Command::Inflate: {
      const Polygon& k = require_polygon(body, "inflate");
      const JohnResult john = max_area_inscribed_ellipse(k, cfg.tol);
      if (!john.converged) throw Error(ErrorCode::NoConvergence, "inflate: inscribed-ellipse solver did not converge");
      r["kind"] = "inflate";
      r["ellipse"] = to_json(john.ellipse);
      json contacts = json::array();
      for (const auto& c : john.contacts) contacts.push_back(to_json(c.point));
      r["contacts"] = contacts;
      json hits = json::array();
      if (cfg.eps) {
        const EllipseBody grown = inflate(john.ellipse, *cfg.eps);
        for (const auto& p : boundary_intersections(grown, k)) hits.push_back(to_json(p));
        r["eps"] = *cfg.eps;
        r["ellipse_inflated"] = to_json(grown);
      } else {
        const WorkingEllipse w = working_ellipse(k, 5, cfg.tol);
        for (const auto& p : w.points) hits.push_back(to_json(p));
        r["eps"] = w.eps;
        r["ellipse_inflated"] = to_json(w.ellipse);
      }
      r["intersections"] = hits;
      return {r, std::nullopt};
    }
    case Command::Witness: {
      r = to_json(witness(body, cfg.seed, cfg.tol));
      r["kind"] = "witness";
      return {r, std::nullopt};
    }
    case Command::Scan: {
      const ScanResult scan = defect_scan(body, cfg.samples, cfg.seed);
      const ScanResult best = refine(body, scan.triangle, cfg.refine_iters);
      r["kind"] = "scan";
      r["samples"] = cfg.samples;
      r["seed"] = cfg.seed;
      r["refine_iters"] = cfg.refine_iters;
      r["scan_defect"] = scan.defect;
      r["triangle"] = to_json(best.triangle);
      r["defect"] = best.defect;
      r["medians"] = to_json(median_report(body, best.triangle));
      return {r, std::nullopt};
    }
    case Command::Render:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown command");
}

void report_error(std::ostream& err, ErrorCode code, const std::string& what) {
  std::string flat = what;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  err << "error=" << to_string(code) << " message=\"" << flat << "\"\n";
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::InflationFailed:
    case ErrorCode::AvoidanceFailed:
    case ErrorCode::LineMissesChord:
    case ErrorCode::DegenerateWitness:
    case ErrorCode::Parallel:
      return kExitNumerical;
    default:
      return kExitValidation;
  }
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Hilbert-geometry toolkit: distances, midpoints, medians and non-concurrence witnesses"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string p_text, q_text, tri_text, format_text = "json";
  std::optional<double> tol_flag;
  double eps = 0.0;

  struct Sub {
    Command command;
    const char* name;
    const char* help;
  };
  const std::vector<Sub> subs = {
      {Command::Dist, "dist", "Hilbert distance between two points"},
      {Command::Midpoint, "midpoint", "Hilbert midpoint of two points"},
      {Command::Medians, "medians", "Medians and concurrency defect of a triangle"},
      {Command::John, "john", "Maximal-area inscribed ellipse of a polygon"},
      {Command::Inflate, "inflate", "Inflate the inscribed ellipse and intersect with the polygon"},
      {Command::Witness, "witness", "Construct a triangle whose medians do not concur"},
      {Command::Scan, "scan", "Randomized search for the largest concurrency defect"},
      {Command::Render, "render", "Render a JSON report as SVG"},
  };
  std::vector<std::pair<CLI::App*, Command>> apps;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    apps.emplace_back(sub, s.command);
    if (s.command == Command::Render) {
      sub->add_option("--report", cfg.report_path, "JSON report written by another command")->required();
    } else {
      sub->add_option("--body", cfg.body_path, "Body JSON file")->required();
      sub->add_option("--tol", tol_flag, "Solver tolerance in (0, 1e-3]; default $HILBERT_TOL or 1e-9");
      sub->add_option("--format", format_text, "json or svg")->check(CLI::IsMember({"json", "svg"}));
    }
    sub->add_option("-o,--output", cfg.output, "Output file, '-' for standard output");
    switch (s.command) {
      case Command::Dist:
      case Command::Midpoint:
        sub->add_option("--p", p_text, "First point x,y")->required();
        sub->add_option("--q", q_text, "Second point x,y")->required();
        break;
      case Command::Medians:
        sub->add_option("--triangle", tri_text, "Vertices x1,y1,x2,y2,x3,y3")->required();
        break;
      case Command::Inflate:
        sub->add_option("--eps", eps, "Inflation parameter; searched when omitted");
        break;
      case Command::Witness:
        sub->add_option("--seed", cfg.seed, "Seed for the exterior point sequence");
        break;
      case Command::Scan:
        sub->add_option("--seed", cfg.seed, "Seed for triangle sampling");
        sub->add_option("--samples", cfg.samples, "Number of random triangles")->check(CLI::PositiveNumber);
        sub->add_option("--refine", cfg.refine_iters, "Local ascent iterations on the best triangle")
            ->check(CLI::NonNegativeNumber);
        break;
      default:
        break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::InvalidArgument, e.what());
  }

  for (const auto& [sub, command] : apps) {
    if (sub->parsed()) {
      cfg.command = command;
      if (command == Command::Inflate && sub->count("--eps") > 0) cfg.eps = eps;
    }
  }
  cfg.format = format_text == "svg" ? Format::Svg : Format::Json;
  if (!p_text.empty()) cfg.p = parse_point(p_text, "--p");
  if (!q_text.empty()) cfg.q = parse_point(q_text, "--q");
  if (!tri_text.empty()) {
    const auto v = parse_numbers(tri_text, 6, "--triangle");
    cfg.triangle = Triangle{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}};
  }

  if (tol_flag) {
    cfg.tol = *tol_flag;
  } else if (const char* env = std::getenv("HILBERT_TOL")) {
    cfg.tol = parse_numbers(env, 1, "HILBERT_TOL")[0];
  }
  if (!(cfg.tol > 0.0 && cfg.tol <= 1e-3)) {
    throw Error(ErrorCode::InvalidArgument, "tol must lie in (0, 1e-3]");
  }
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command != Command::Render && !(config.tol > 0.0 && config.tol <= 1e-3)) {
      throw Error(ErrorCode::InvalidArgument, "tol must lie in (0, 1e-3]");
    }
    Outcome outcome = execute(config);
    const bool svg = config.command == Command::Render || config.format == Format::Svg;
    const std::string text = svg ? render_svg(outcome.report) : dump(outcome.report);
    if (config.output.empty() || config.output == "-") {
      out << text;
    } else {
      std::ofstream file(config.output, std::ios::binary);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + config.output + "'");
      file << text;
    }
    if (outcome.soft_failure) {
      report_error(err, outcome.soft_failure->code(), outcome.soft_failure->what());
      return exit_code_for(outcome.soft_failure->code());
    }
    return kExitOk;
  } catch (const Error& e) {
    report_error(err, e.code(), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report_error(err, ErrorCode::InvalidArgument, e.what());
    return kExitValidation;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(argc, argv, out);
  } catch (const Error& e) {
    report_error(err, e.code(), e.what());
    return kExitValidation;
  }
  if (!cfg) return kExitOk;
  return run(*cfg, out, err);
}

}  // namespace hilbert::cli
