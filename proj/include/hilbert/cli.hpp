#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hilbert/convex_body.hpp"
#include "hilbert/john_ellipse.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/witness.hpp"

namespace hilbert::cli {

using json = nlohmann::json;

enum class Command { Dist, Midpoint, Medians, John, Inflate, Witness, Scan, Render };
enum class Format { Json, Svg };

inline constexpr double kDefaultTol = 1e-9;

struct RunConfig {
  Command command = Command::Dist;
  std::string body_path;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::string output = "-";  // "-" is standard output
  Format format = Format::Json;

  std::optional<Point> p, q;        // dist, midpoint
  std::optional<Triangle> triangle; // medians
  std::optional<double> eps;        // inflate; chosen by the eps search when absent
  int samples = 10000;              // scan
  int refine_iters = 0;             // scan
  std::string report_path;          // render
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

int exit_code_for(ErrorCode code);

/// Parses argv into a config. Throws Error(InvalidArgument) on bad flags.
/// Returns nullopt when help was printed.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Runs one command; the report goes to config.output, a one-line
/// "error=<Token> ..." record to `err` on failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry point used by the `hilbert` executable.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// ---- JSON ------------------------------------------------------------------

json to_json(const Point& p);
json to_json(const EllipseBody& e);
json to_json(const ConvexBody& body);
json to_json(const Triangle& t);
json to_json(const MedianReport& r);
json to_json(const JohnResult& r);
json to_json(const WitnessReport& r);

Point point_from_json(const json& j);
ConvexBody body_from_json(const json& j);
ConvexBody load_body(const std::string& path);

/// Serialized text of a report; identical inputs give identical bytes.
std::string dump(const json& report);

// ---- SVG -------------------------------------------------------------------

/// Standalone SVG for any report produced by `run`; dispatches on "kind".
std::string render_svg(const json& report);

}  // namespace hilbert::cli
