// Command-line front end.
//
// Exit codes: 0 success, 1 I/O failure, 2 bad arguments, 3 numeric guard
// failure (truncation, convergence, degenerate or orthogonal postselection).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wmstate/deviations.hpp"
#include "wmstate/figures.hpp"
#include "wmstate/metrics.hpp"

namespace {

using namespace wmstate;
using nlohmann::json;

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;

  Config load() const {
    Config c = config_path.empty() ? Config{} : Config::load(config_path);
    for (const auto& o : overrides) c.set(o);
    return c;
  }
};

void add_common(CLI::App* app, Common& common) {
  app->add_option("--config", common.config_path, "key = value configuration file");
  app->add_option("--set", common.overrides, "override a configuration key (key=value)")
      ->allow_extra_args(false);
}

json complex_json(Complex c) { return {c.real(), c.imag()}; }

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

json state_report(const StateVector& s) {
  json j;
  j["cutoff"] = s.dimension();
  j["norm"] = s.norm();
  json amps = json::array();
  for (Eigen::Index n = 0; n < s.dimension(); ++n) amps.push_back(complex_json(s[n]));
  j["amplitudes"] = amps;
  try {
    const PhotonStats st = photon_stats(s);
    j["mean_n"] = st.mean_n;
    j["g2"] = st.g2;
    j["mandel_q"] = st.mandel_q;
  } catch (const DegenerateError&) {
    j["mean_n"] = 0.0;
  }
  j["S_0"] = squeezing(s, 0.0);
  j["S_min"] = min_squeezing(s).value;
  return j;
}

int run_state(const std::string& kind, int n, int cutoff, const Config& c) {
  const double beta = c.number("beta");
  const Complex b = std::polar(beta, c.number("theta"));
  const double eta = c.number("eta");
  const double phi = c.number("phi");
  auto pick = [&](int fallback) { return ModeSpace(cutoff > 0 ? cutoff : fallback); };
  StateVector s = [&]() -> StateVector {
    if (kind == "vacuum") return vacuum(pick(2));
    if (kind == "fock") return fock(n, pick(n + 2));
    if (kind == "coherent") return coherent_state(b, pick(minimal_cutoff(PointerInput::coherent(b))));
    if (kind == "spac") return spac(b, pick(minimal_photon_added_cutoff(PointerInput::coherent(b))));
    if (kind == "squeezed") {
      return squeezed_vacuum(eta, phi, pick(minimal_cutoff(PointerInput::squeezed(eta, phi))));
    }
    if (kind == "spasv") {
      return spasv(eta, phi, pick(minimal_photon_added_cutoff(PointerInput::squeezed(eta, phi))));
    }
    throw ParameterError("unknown state kind '" + kind + "'");
  }();
  json j = state_report(s);
  j["kind"] = kind;
  print(j);
  return 0;
}

int run_protocol(bool exact, const Config& c) {
  const ProtocolParams p = c.protocol();
  const ConditionalOutput out =
      exact ? conditional_state_exact(p, c.exact_options()) : conditional_state_first_order(p);
  json j;
  j["path"] = exact ? "exact" : "first_order";
  j["pointer"] = to_string(p.pointer.kind);
  j["signal_cutoff"] = out.state.dimension();
  j["p_zeroth"] = out.p_zeroth;
  j["p_model"] = out.p_model;
  const bool kappa = out.kind == CoefficientKind::kKappa;
  j[kappa ? "kappa1" : "lambda1"] = complex_json(out.coefficient1);
  j[kappa ? "kappa2" : "lambda2"] = complex_json(out.coefficient2);
  const PointerInput& ptr = p.pointer;
  const ModeSpace space = out.state.modes().front();
  if (ptr.kind == PointerKind::kCoherent) {
    j["F1"] = fidelity(out.state, coherent_state(ptr.beta, space));
    j["F2"] = fidelity(out.state, spac(ptr.beta, space));
  } else if (ptr.kind == PointerKind::kSqueezedVacuum) {
    j["F1"] = fidelity(out.state, squeezed_vacuum(ptr.eta, ptr.phi, space));
    j["F2"] = fidelity(out.state, spasv(ptr.eta, ptr.phi, space));
  } else {
    j["F1"] = fidelity(out.state, vacuum(space));
    j["F2"] = fidelity(out.state, fock(1, space));
  }
  const PhotonStats st = photon_stats(out.state);
  j["mean_n"] = st.mean_n;
  j["g2"] = st.g2;
  j["mandel_q"] = st.mandel_q;
  j["S"] = squeezing(out.state, c.number("quadrature_phi"));
  print(j);
  return 0;
}

int run_metrics(const std::string& name, const Config& c) {
  json j;
  j["metric"] = name;
  const ProtocolParams p = c.protocol();
  if (name == "weak-values") {
    const WeakValues w = weak_values(p.alpha, p.epsilon);
    const WeakValues e = exact_weak_values(p.alpha, p.epsilon, p.idler_cutoff);
    j["A_w"] = complex_json(w.A_w);
    j["B_w"] = complex_json(w.B_w);
    j["A_w_exact"] = complex_json(e.A_w);
    j["B_w_exact"] = complex_json(e.B_w);
  } else if (name == "postselection") {
    const auto pre = preselection_amplitudes(p.alpha, p.epsilon);
    j["alpha_t"] = complex_json(pre.transmitted);
    j["alpha_r"] = complex_json(pre.reflected);
    j["p_success"] = postselection_probability(p.alpha, p.epsilon);
  } else if (name == "snr") {
    if (p.pointer.kind != PointerKind::kCoherent) throw ParameterError("snr needs pointer = coherent");
    const SnrReport r = snr_ratio(p, p.pointer.beta, c.path());
    j["chi"] = r.chi;
    j["r_post_per_sqrtN"] = r.r_post_per_sqrtN;
    j["r_non_per_sqrtN"] = r.r_non_per_sqrtN;
    j["delta_q"] = r.delta_q;
    j["delta_q_prime"] = r.delta_q_prime;
    j["variance_post"] = r.variance_post;
    j["variance_non"] = r.variance_non;
  } else if (name == "wigner") {
    const ConditionalOutput out = c.path() == ExpansionPath::kExact
                                      ? conditional_state_exact(p, c.exact_options())
                                      : conditional_state_first_order(p);
    const WignerGrid g = wigner_numeric(out.state, c.grid());
    const WignerGrid guarded = wigner_numeric(out.state, c.grid().guarded());
    j["W_min"] = g.min();
    j["W_max"] = g.max();
    j["integral_guarded"] = guarded.integral();
    j["quadrature_variance_q"] = 2.0 * guarded.variance_x();
    j["quadrature_variance_p"] = 2.0 * guarded.variance_p();
  } else {
    std::vector<std::string> metrics{name};
    const MetricPoint point = evaluate_metrics(metrics, c);
    j["value"] = point.values.at(name);
    j["p_zeroth"] = point.p_zeroth;
    j["p_model"] = point.p_model;
  }
  print(j);
  return 0;
}

int run_sweep_cmd(const std::string& var, const std::string& range,
                  const std::vector<std::string>& metrics, const std::string& out,
                  const Config& c) {
  const SweepSpec spec = SweepSpec::parse(var, range);
  Series s{"sweep-" + var, "sweep", sweep(spec, metrics, c), {}, false, {}};
  s.extras["range"] = range;
  const std::string csv = render_csv(s, c);
  if (out.empty()) {
    std::cout << csv;
    return 0;
  }
  std::error_code ec;
  const std::filesystem::path dir(out);
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + out + "'");
  for (const auto& [file, text] : {std::pair{dir / (s.name + ".csv"), csv},
                                   std::pair{dir / (s.name + ".json"), render_sidecar(s, c)}}) {
    std::FILE* f = std::fopen(file.string().c_str(), "wb");
    if (!f) throw IoError("cannot write '" + file.string() + "'");
    std::fwrite(text.data(), 1, text.size(), f);
    if (std::fclose(f) != 0) throw IoError("cannot write '" + file.string() + "'");
    std::cout << file.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Postselected weak-measurement state engineering in truncated Fock space"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Common common;

  auto* state = app.add_subcommand("state", "print amplitudes and statistics of a state");
  std::string kind;
  int fock_n = 1;
  int cutoff = 0;
  state->add_option("kind", kind, "vacuum | fock | coherent | squeezed | spac | spasv")->required();
  state->add_option("--n", fock_n, "photon number for fock");
  state->add_option("--cutoff", cutoff, "cutoff (default: smallest passing the guard)");
  add_common(state, common);

  auto* protocol = app.add_subcommand("protocol", "run the state-preparation protocol");
  auto* run = protocol->add_subcommand("run", "compute the conditional pointer state");
  protocol->require_subcommand(1);
  bool exact = false;
  run->add_flag("--exact", exact, "use the three-mode simulation");
  add_common(run, common);

  auto* metrics = app.add_subcommand("metrics", "evaluate one metric");
  std::string metric_name;
  metrics->add_option("name", metric_name,
                      "weak-values | postselection | snr | wigner | any sweep metric")
      ->required();
  add_common(metrics, common);

  auto* figure = app.add_subcommand("figure", "write the data series of a figure");
  std::string figure_id;
  std::string out_dir = "figures";
  figure->add_option("id", figure_id, "figure id (use 'list' to print them)")->required();
  figure->add_option("--out", out_dir, "output directory");
  add_common(figure, common);

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter and tabulate metrics");
  std::string var;
  std::string range;
  std::vector<std::string> sweep_metric_names;
  std::string sweep_out;
  sweep_cmd->add_option("--var", var, "beta | theta | eta | phi | epsilon | alpha | g")->required();
  sweep_cmd->add_option("--range", range, "lo:hi:n")->required();
  sweep_cmd->add_option("--metric", sweep_metric_names, "metric name (repeatable)")->required();
  sweep_cmd->add_option("--out", sweep_out, "write CSV + sidecar here instead of stdout");
  add_common(sweep_cmd, common);

  auto* deviations = app.add_subcommand("deviations", "closed-form vs numeric report (JSON)");
  std::string deviations_out;
  deviations->add_option("--out", deviations_out, "write the report to this file");
  add_common(deviations, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const Config config = common.load();
    if (*state) return run_state(kind, fock_n, cutoff, config);
    if (*run) return run_protocol(exact || config.flag("exact"), config);
    if (*metrics) return run_metrics(metric_name, config);
    if (*figure) {
      if (figure_id == "list") {
        for (const auto& id : figure_ids()) std::cout << id << "\n";
        return 0;
      }
      check_figure_id(figure_id);
      for (const auto& path : run_figure(figure_id, config, out_dir)) std::cout << path.string() << "\n";
      return 0;
    }
    if (*sweep_cmd) return run_sweep_cmd(var, range, sweep_metric_names, sweep_out, config);
    if (*deviations) {
      const DeviationReport report = compute_deviations(config);
      const std::string text = report.to_json();
      if (deviations_out.empty()) {
        std::cout << text;
      } else {
        std::FILE* f = std::fopen(deviations_out.c_str(), "wb");
        if (!f) throw IoError("cannot write '" + deviations_out + "'");
        std::fwrite(text.data(), 1, text.size(), f);
        if (std::fclose(f) != 0) throw IoError("cannot write '" + deviations_out + "'");
      }
      return report.required_ok() ? 0 : kExitNumeric;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
