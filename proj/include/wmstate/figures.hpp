#pragma once

// Figure data series, parameter sweeps and deterministic CSV/JSON output.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wmstate/config.hpp"

namespace wmstate {

inline constexpr const char* kToolName = "wmstate";
inline constexpr const char* kToolVersion = "0.4.1";

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of `name` in columns; throws ParameterError if absent.
  std::size_t column(const std::string& name) const;
};

/// One CSV file worth of data plus the metadata that goes into its sidecar.
struct Series {
  std::string name;  // file stem
  std::string figure;
  Table table;
  /// Per-series values (curve parameter, grid extrema, ...), kept as text.
  std::map<std::string, std::string> extras;
  bool has_grid = false;
  WignerGridSpec grid;
};

/// Registered figure ids in a fixed order.
const std::vector<std::string>& figure_ids();
/// Throws UnknownFigureError for unregistered ids.
void check_figure_id(const std::string& id);

/// Computes every series of a figure. Panels that fix a parameter (fig4
/// beta, fig6/fig8 alpha, fig9 eta) override the configuration for it.
std::vector<Series> compute_figure(const std::string& id, const Config& config);

/// CSV text: '#' provenance block, header, one row per line.
std::string render_csv(const Series& series, const Config& config);
/// JSON sidecar: parameters, tool version, grid and column metadata.
std::string render_sidecar(const Series& series, const Config& config);

/// Computes and writes <out_dir>/<name>.csv and .json for each series.
/// Returns the written paths. Throws IoError on write failures.
std::vector<std::filesystem::path> run_figure(const std::string& id, const Config& config,
                                              const std::filesystem::path& out_dir);

struct SweepSpec {
  std::string variable;
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;

  /// Parses "lo:hi:n". Throws RangeError.
  static SweepSpec parse(const std::string& variable, const std::string& range);
  /// Throws RangeError unless points >= 2 and lo < hi, ParameterError for
  /// unknown variables.
  void validate() const;
  double value_at(int i) const { return lo + (hi - lo) * i / (points - 1); }
};

/// Variables: beta, theta, eta, phi, epsilon, alpha, g.
const std::vector<std::string>& sweep_variables();
/// Metrics: F1, F2, g2, mandel_q, mean_n, S, S_min, chi, abs_A_w, abs_B_w.
const std::vector<std::string>& sweep_metrics();

/// Columns: variable, one per metric, p_zeroth, p_model. Sweeping beta or
/// theta forces a coherent pointer, eta or phi a squeezed one.
Table sweep(const SweepSpec& spec, const std::vector<std::string>& metrics, const Config& config);

/// Value of a single metric at the configuration, and the corresponding
/// conditional output's probabilities.
struct MetricPoint {
  std::map<std::string, double> values;
  double p_zeroth = 0.0;
  double p_model = 0.0;
};
MetricPoint evaluate_metrics(const std::vector<std::string>& metrics, const Config& config);

}  // namespace wmstate
