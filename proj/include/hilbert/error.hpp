#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbert {

enum class ErrorCode {
  // geometry_core
  NonCollinear,
  DegenerateRatio,
  CoincidentPoints,
  Parallel,
  OffLine,
  // convex_body
  InvalidBody,
  PointsOutside,
  // hilbert_metric
  OrderViolation,
  DegenerateTriangle,
  // john_ellipse
  DegeneratePolygon,
  NoConvergence,
  // witness_pipeline
  InflationFailed,
  TooFewPoints,
  NoExteriorRegion,
  AvoidanceFailed,
  CollinearInputs,
  LineMissesChord,
  DegenerateWitness,
  // cli
  SchemaMismatch,
  InvalidArgument,
};

/// Stable token used on stderr by the command-line tool.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hilbert
