#pragma once

// Closed-form versus numeric comparison report. Each entry records the
// largest absolute deviation between an analytic expression and the
// truncated-space numeric value, and where it occurs. Entries marked
// `required` are limits that must agree; the rest are informational.

#include <map>
#include <string>
#include <vector>

#include "wmstate/config.hpp"

namespace wmstate {

inline constexpr double kDeviationTolerance = 1e-6;

struct DeviationEntry {
  std::string id;
  std::string formula;
  /// +inf when the closed form produced non-finite values.
  double max_abs_deviation = 0.0;
  std::map<std::string, double> location;
  std::map<std::string, double> params;
  bool required = false;
  bool within_tolerance = false;
};

struct DeviationReport {
  std::vector<DeviationEntry> entries;

  bool required_ok() const;
  std::string to_json() const;
};

/// Wigner comparisons use the configured grid, except for squeezed inputs
/// with eta > 0, which use an 81 x 81 grid over the same box.
DeviationReport compute_deviations(const Config& config);

}  // namespace wmstate
