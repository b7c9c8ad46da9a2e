#include "wmstate/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "wmstate/metrics.hpp"

namespace wmstate {

namespace {

std::string exact_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct References {
  StateVector input;
  StateVector added;
};

References references_for(const PointerInput& pointer, int cutoff) {
  const ModeSpace space(cutoff);
  switch (pointer.kind) {
    case PointerKind::kVacuum: return {fock(0, space), fock(1, space)};
    case PointerKind::kCoherent: return {coherent_state(pointer.beta, space), spac(pointer.beta, space)};
    case PointerKind::kSqueezedVacuum:
      return {squeezed_vacuum(pointer.eta, pointer.phi, space), spasv(pointer.eta, pointer.phi, space)};
  }
  throw ParameterError("unknown pointer kind");
}

ConditionalOutput conditional(const Config& config, const ProtocolParams& params) {
  return config.path() == ExpansionPath::kExact
             ? conditional_state_exact(params, config.exact_options())
             : conditional_state_first_order(params);
}

bool needs_references(const std::vector<std::string>& metrics) {
  return std::any_of(metrics.begin(), metrics.end(), [](const std::string& m) {
    return m == "F1" || m == "F2" || m == "S_input" || m == "S_added";
  });
}

bool is_snr_metric(const std::string& m) {
  return m == "chi" || m == "delta_q" || m == "delta_q_prime" || m == "variance_post" ||
         m == "variance_non" || m == "r_post" || m == "r_non";
}

Table metric_table(const std::string& variable, const std::vector<std::string>& metrics) {
  Table t;
  t.columns.push_back(variable);
  t.columns.insert(t.columns.end(), metrics.begin(), metrics.end());
  t.columns.push_back("p_zeroth");
  t.columns.push_back("p_model");
  return t;
}

std::vector<double> metric_row(double x, const std::vector<std::string>& metrics,
                               const MetricPoint& point) {
  std::vector<double> row{x};
  for (const auto& m : metrics) row.push_back(point.values.at(m));
  row.push_back(point.p_zeroth);
  row.push_back(point.p_model);
  return row;
}

// Config key and forced pointer kind for each sweep variable.
struct VariableBinding {
  std::string key;
  const char* pointer;  // nullptr keeps the configured pointer
};

VariableBinding binding_for(const std::string& variable) {
  if (variable == "beta" || variable == "theta") return {variable, "coherent"};
  if (variable == "eta" || variable == "phi") return {variable, "squeezed"};
  if (variable == "epsilon" || variable == "alpha" || variable == "g") return {variable, nullptr};
  throw ParameterError("unknown sweep variable '" + variable + "'");
}

Table run_sweep(const SweepSpec& spec, const std::vector<std::string>& metrics, Config config) {
  spec.validate();
  const VariableBinding bind = binding_for(spec.variable);
  if (bind.pointer) config.set("pointer", bind.pointer);
  Table t = metric_table(spec.variable, metrics);
  for (int i = 0; i < spec.points; ++i) {
    const double x = spec.value_at(i);
    config.set(bind.key, exact_text(x));
    t.rows.push_back(metric_row(x, metrics, evaluate_metrics(metrics, config)));
  }
  return t;
}

SweepSpec beta_range(const Config& c) {
  return {"beta", c.number("beta_min"), c.number("beta_max"), c.integer("beta_points")};
}

SweepSpec eta_range(const Config& c) {
  return {"eta", c.number("eta_min"), c.number("eta_max"), c.integer("eta_points")};
}

Series wigner_series(const std::string& name, const std::string& figure, const StateVector& state,
                     const WignerGridSpec& spec) {
  const WignerGrid grid = wigner_numeric(state, spec);
  Series s{name, figure, {{"x", "p", "W"}, {}}, {}, true, spec};
  for (int i = 0; i < spec.nx; ++i) {
    for (int j = 0; j < spec.np; ++j) s.table.rows.push_back({spec.x_at(i), spec.p_at(j), grid.values(i, j)});
  }
  s.extras["W_min"] = format_number(grid.min());
  s.extras["W_max"] = format_number(grid.max());
  s.extras["cutoff"] = std::to_string(state.dimension());
  return s;
}

std::string number_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<Series> compute(const std::string& id, Config config) {
  if (id == "fig2" || id == "fig3a" || id == "fig3b") {
    const std::vector<std::string> metrics =
        id == "fig2" ? std::vector<std::string>{"F1", "F2"}
                     : std::vector<std::string>{id == "fig3a" ? "g2" : "mandel_q"};
    return {{id, id, run_sweep(beta_range(config), metrics, config), {}, false, {}}};
  }
  if (id.starts_with("fig4-wigner-beta")) {
    const std::string b = id.substr(std::string("fig4-wigner-beta").size());
    config.set("pointer", "coherent");
    config.set("beta", b);
    const ConditionalOutput out = conditional(config, config.protocol());
    Series s = wigner_series(id, id, out.state, config.grid());
    s.extras["beta"] = b;
    return {s};
  }
  if (id == "fig5") {
    std::vector<Series> out;
    const std::vector<std::string> metrics{"chi", "delta_q", "delta_q_prime", "variance_post",
                                           "variance_non"};
    for (double eps : config.numbers("fig5_epsilons")) {
      Config c = config;
      c.set("epsilon", exact_text(eps));
      const std::string name = "fig5-eps" + number_label(eps);
      Series s{name, id, run_sweep(beta_range(c), metrics, c), {}, false, {}};
      s.extras["epsilon"] = exact_text(eps);
      out.push_back(std::move(s));
    }
    return out;
  }
  if (id == "fig6a" || id == "fig6b" || id == "fig8a" || id == "fig8b") {
    const bool strong = id.back() == 'b';
    config.set("alpha", strong ? "0.75" : "0.01");
    const std::vector<std::string> metrics = id.starts_with("fig6")
                                                 ? std::vector<std::string>{"F1", "F2"}
                                                 : std::vector<std::string>{"S", "S_input", "S_added"};
    Series s{id, id, run_sweep(eta_range(config), metrics, config), {}, false, {}};
    s.extras["alpha"] = config.text("alpha");
    return {s};
  }
  if (id.starts_with("fig9-eta")) {
    // fig9-eta<E>-<panel>
    const std::string rest = id.substr(std::string("fig9-eta").size());
    const auto dash = rest.find('-');
    const std::string eta = rest.substr(0, dash);
    const std::string panel = rest.substr(dash + 1);
    config.set("pointer", "squeezed");
    config.set("eta", eta);
    const ProtocolParams params = config.protocol();
    const int n = params.resolved_signal_cutoff();
    const double e = config.number("eta");
    const double phi = config.number("phi");
    StateVector state = panel == "sv"      ? squeezed_vacuum(e, phi, ModeSpace(n))
                        : panel == "spasv" ? spasv(e, phi, ModeSpace(n))
                                           : conditional(config, params).state;
    Series s = wigner_series(id, id, state, config.grid());
    s.extras["eta"] = eta;
    s.extras["panel"] = panel;
    return {s};
  }
  throw UnknownFigureError("unknown figure id '" + id + "'");
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ParameterError("no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v{"fig2", "fig3a", "fig3b"};
    for (const char* b : {"0", "1", "2"}) v.push_back(std::string("fig4-wigner-beta") + b);
    v.insert(v.end(), {"fig5", "fig6a", "fig6b", "fig8a", "fig8b"});
    for (const char* e : {"0", "1", "2"}) {
      for (const char* p : {"sv", "omega", "spasv"}) v.push_back(std::string("fig9-eta") + e + "-" + p);
    }
    return v;
  }();
  return ids;
}

void check_figure_id(const std::string& id) {
  const auto& ids = figure_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw UnknownFigureError("unknown figure id '" + id + "'");
  }
}

std::vector<Series> compute_figure(const std::string& id, const Config& config) {
  check_figure_id(id);
  return compute(id, config);
}

std::string render_csv(const Series& series, const Config& config) {
  std::string out;
  out += std::string("# ") + kToolName + " " + kToolVersion + "\n";
  out += "# figure: " + series.figure + "\n";
  out += "# series: " + series.name + "\n";
  for (const auto& [k, v] : series.extras) out += "# " + k + ": " + v + "\n";
  for (const auto& [k, v] : config.entries()) out += "# config " + k + " = " + v + "\n";
  for (std::size_t i = 0; i < series.table.columns.size(); ++i) {
    if (i) out += ',';
    out += series.table.columns[i];
  }
  out += '\n';
  for (const auto& row : series.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_sidecar(const Series& series, const Config& config) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["figure"] = series.figure;
  j["series"] = series.name;
  j["csv"] = series.name + ".csv";
  j["columns"] = series.table.columns;
  j["rows"] = series.table.rows.size();
  j["params"] = config.entries();
  j["extras"] = series.extras;
  j["float_format"] = "%.8e";
  if (series.has_grid) {
    const WignerGridSpec& g = series.grid;
    j["grid"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"p_min", g.p_min},
                 {"p_max", g.p_max}, {"nx", g.nx},       {"np", g.np}};
  }
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> run_figure(const std::string& id, const Config& config,
                                              const std::filesystem::path& out_dir) {
  const std::vector<Series> series = compute_figure(id, config);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    f.close();
    if (!f) throw IoError("cannot write '" + path.string() + "'");
    written.push_back(path);
  };
  for (const Series& s : series) {
    write(out_dir / (s.name + ".csv"), render_csv(s, config));
    write(out_dir / (s.name + ".json"), render_sidecar(s, config));
  }
  return written;
}

SweepSpec SweepSpec::parse(const std::string& variable, const std::string& range) {
  std::vector<std::string> parts;
  std::stringstream ss(range);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw RangeError("range must be lo:hi:n, got '" + range + "'");
  SweepSpec s;
  s.variable = variable;
  try {
    std::size_t used = 0;
    s.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("lo");
    s.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("hi");
    s.points = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("n");
  } catch (const std::logic_error&) {
    throw RangeError("range must be lo:hi:n with numbers, got '" + range + "'");
  }
  s.validate();
  return s;
}

void SweepSpec::validate() const {
  const auto& vars = sweep_variables();
  if (std::find(vars.begin(), vars.end(), variable) == vars.end()) {
    throw ParameterError("unknown sweep variable '" + variable + "'");
  }
  if (points < 2) throw RangeError("sweep needs at least 2 points");
  if (!(lo < hi)) throw RangeError("sweep needs lo < hi");
}

const std::vector<std::string>& sweep_variables() {
  static const std::vector<std::string> v{"beta", "theta", "eta", "phi", "epsilon", "alpha", "g"};
  return v;
}

const std::vector<std::string>& sweep_metrics() {
  static const std::vector<std::string> m{
      "F1",      "F2",      "g2",      "mandel_q", "mean_n",        "S",
      "S_min",   "S_input", "S_added", "chi",      "delta_q",       "delta_q_prime",
      "r_post",  "r_non",   "variance_post",       "variance_non",  "abs_A_w",
      "abs_B_w"};
  return m;
}

Table sweep(const SweepSpec& spec, const std::vector<std::string>& metrics, const Config& config) {
  if (metrics.empty()) throw ParameterError("sweep needs at least one metric");
  return run_sweep(spec, metrics, config);
}

MetricPoint evaluate_metrics(const std::vector<std::string>& metrics, const Config& config) {
  const auto& known = sweep_metrics();
  for (const auto& m : metrics) {
    if (std::find(known.begin(), known.end(), m) == known.end()) {
      throw ParameterError("unknown metric '" + m + "'");
    }
  }
  const ProtocolParams params = config.protocol();
  const ConditionalOutput out = conditional(config, params);
  MetricPoint point{{}, out.p_zeroth, out.p_model};

  std::optional<References> refs;
  if (needs_references(metrics)) refs = references_for(params.pointer, static_cast<int>(out.state.dimension()));
  std::optional<SnrReport> snr;
  std::optional<PhotonStats> stats;
  const double quad_phi = config.number("quadrature_phi");

  for (const auto& m : metrics) {
    double v = 0.0;
    if (m == "F1") {
      v = fidelity(out.state, refs->input);
    } else if (m == "F2") {
      v = fidelity(out.state, refs->added);
    } else if (m == "g2" || m == "mandel_q" || m == "mean_n") {
      if (!stats) stats = photon_stats(out.state);
      v = m == "g2" ? stats->g2 : m == "mandel_q" ? stats->mandel_q : stats->mean_n;
    } else if (m == "S") {
      v = squeezing(out.state, quad_phi);
    } else if (m == "S_min") {
      v = min_squeezing(out.state).value;
    } else if (m == "S_input") {
      v = squeezing(refs->input, quad_phi);
    } else if (m == "S_added") {
      v = squeezing(refs->added, quad_phi);
    } else if (is_snr_metric(m)) {
      if (params.pointer.kind != PointerKind::kCoherent) {
        throw ParameterError("metric '" + m + "' needs a coherent pointer");
      }
      if (!snr) snr = snr_ratio(params, params.pointer.beta, config.path());
      v = m == "chi"             ? snr->chi
          : m == "delta_q"       ? snr->delta_q
          : m == "delta_q_prime" ? snr->delta_q_prime
          : m == "variance_post" ? snr->variance_post
          : m == "variance_non"  ? snr->variance_non
          : m == "r_post"        ? snr->r_post_per_sqrtN
                                 : snr->r_non_per_sqrtN;
    } else if (m == "abs_A_w" || m == "abs_B_w") {
      const WeakValues w = weak_values(params.alpha, params.epsilon);
      v = std::abs(m == "abs_A_w" ? w.A_w : w.B_w);
    }
    point.values[m] = v;
  }
  return point;
}

}  // namespace wmstate
