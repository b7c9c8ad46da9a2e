#include "wmstate/deviations.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include <json.hpp>

#include "wmstate/closed_forms.hpp"
#include "wmstate/metrics.hpp"
#include "wmstate/wigner.hpp"

namespace wmstate {

namespace {

namespace cf = closed_form;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tracks the largest deviation and where it happened.
struct Worst {
  double value = 0.0;
  std::map<std::string, double> at;

  void offer(double closed, double numeric, std::map<std::string, double> where) {
    const double d = std::isfinite(closed) ? std::abs(closed - numeric) : kInf;
    if (d > value || at.empty() || std::isnan(d)) {
      value = std::isnan(d) ? kInf : d;
      at = std::move(where);
    }
  }
};

DeviationEntry make_entry(std::string id, std::string formula, const Worst& w,
                          std::map<std::string, double> params, bool required) {
  DeviationEntry e;
  e.id = std::move(id);
  e.formula = std::move(formula);
  e.max_abs_deviation = w.value;
  e.location = w.at;
  e.params = std::move(params);
  e.required = required;
  e.within_tolerance = w.value <= kDeviationTolerance;
  return e;
}

Worst compare_grids(const WignerGrid& closed, const WignerGrid& numeric) {
  Worst w;
  for (int i = 0; i < closed.spec.nx; ++i) {
    for (int j = 0; j < closed.spec.np; ++j) {
      w.offer(closed.values(i, j), numeric.values(i, j),
              {{"x", closed.spec.x_at(i)}, {"p", closed.spec.p_at(j)}});
    }
  }
  return w;
}

ProtocolParams with_pointer(ProtocolParams p, PointerInput pointer, double alpha) {
  p.pointer = pointer;
  p.alpha = alpha;
  p.signal_cutoff = 0;
  return p;
}

// Quantities of Theta at one beta, numeric and closed form.
struct ThetaSample {
  Complex beta, k1, k2;
  StateVector state;
  double norm;  // numeric N
  ModeSpace space;
};

ThetaSample theta_sample(const ProtocolParams& base, double beta) {
  const ProtocolParams p = with_pointer(base, PointerInput::coherent(beta), base.alpha.real());
  const ConditionalOutput out = conditional_state_first_order(p);
  const double norm = std::sqrt(out.p_zeroth / out.p_model);
  return {beta, out.coefficient1, out.coefficient2, out.state, norm, out.state.modes().front()};
}

}  // namespace

bool DeviationReport::required_ok() const {
  for (const auto& e : entries) {
    if (e.required && !e.within_tolerance) return false;
  }
  return true;
}

std::string DeviationReport::to_json() const {
  nlohmann::json j;
  j["tool"] = "wmstate";
  j["tolerance"] = kDeviationTolerance;
  j["required_ok"] = required_ok();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json item;
    item["id"] = e.id;
    item["formula"] = e.formula;
    if (std::isfinite(e.max_abs_deviation)) {
      item["max_abs_deviation"] = e.max_abs_deviation;
    } else {
      item["max_abs_deviation"] = nullptr;
      item["non_finite"] = true;
    }
    item["location"] = e.location;
    item["params"] = e.params;
    item["required"] = e.required;
    item["within_tolerance"] = e.within_tolerance;
    j["entries"].push_back(item);
  }
  return j.dump(2) + "\n";
}

DeviationReport compute_deviations(const Config& config) {
  DeviationReport report;
  const ProtocolParams base = config.protocol();
  const double alpha = base.alpha.real();
  const std::map<std::string, double> common{
      {"g", base.g}, {"alpha", alpha}, {"epsilon", base.epsilon}};
  const WignerGridSpec grid = config.grid();
  WignerGridSpec coarse = grid;
  coarse.nx = 81;
  coarse.np = 81;

  // -- Theta scalar closed forms over a set of beta values.
  std::vector<ThetaSample> thetas;
  for (double b : {0.0, 0.5, 1.0, 2.0, 4.0}) thetas.push_back(theta_sample(base, b));

  using ScalarFn = std::function<double(const ThetaSample&)>;
  auto theta_entry = [&](const std::string& id, const std::string& formula, ScalarFn closed,
                         ScalarFn numeric) {
    Worst w;
    for (const auto& t : thetas) w.offer(closed(t), numeric(t), {{"beta", t.beta.real()}});
    report.entries.push_back(make_entry(id, formula, w, common, false));
  };

  theta_entry(
      "theta_normalization", "N = [|k1|^2 + |k2|^2 (1+|b|^2) - 2 Re(k1 k2* b)]^(-1/2)",
      [](const ThetaSample& t) { return cf::theta_normalization(t.beta, t.k1, t.k2); },
      [](const ThetaSample& t) { return t.norm; });
  theta_entry(
      "theta_fidelity_coherent", "F1 = |N (k1 - k2 b*)|^2",
      [](const ThetaSample& t) { return cf::theta_fidelity_coherent(t.beta, t.k1, t.k2); },
      [](const ThetaSample& t) { return fidelity(t.state, coherent_state(t.beta, t.space)); });
  theta_entry(
      "theta_fidelity_spac", "F2 = N^2 |k1 b - k2 (1+|b|^2)|^2 / (1+|b|^2)",
      [](const ThetaSample& t) { return cf::theta_fidelity_spac(t.beta, t.k1, t.k2); },
      [](const ThetaSample& t) { return fidelity(t.state, spac(t.beta, t.space)); });
  theta_entry(
      "theta_mean_n", "<a+ a> of Theta",
      [](const ThetaSample& t) { return cf::theta_mean_n(t.beta, t.k1, t.k2); },
      [](const ThetaSample& t) { return photon_stats(t.state).mean_n; });
  theta_entry(
      "theta_a2_moment", "<a+^2 a^2> of Theta, cross term Re[k1 k2* (2|b|^2 b + |b|^4 b)]",
      [](const ThetaSample& t) { return cf::theta_a2_moment(t.beta, t.k1, t.k2); },
      [](const ThetaSample& t) {
        const PhotonStats s = photon_stats(t.state);
        return s.g2 * s.mean_n * s.mean_n;
      });
  theta_entry(
      "theta_mean_q", "<q> = N^2 {|k1|^2 h1 + |k2|^2 h2 - 2 Re[k1 k2* h3]}",
      [](const ThetaSample& t) { return cf::theta_mean_q(t.beta, t.k1, t.k2); },
      [](const ThetaSample& t) { return expectation(quadrature(t.space, 0.0), t.state).real(); });
  auto numeric_q2 = [](const ThetaSample& t) {
    const Operator q = quadrature(t.space, 0.0);
    // <q^2> from the physical moments, immune to the truncated top level.
    const double s = squeezing(t.state, 0.0);
    const double m = expectation(q, t.state).real();
    return s + 0.5 + m * m;
  };
  theta_entry(
      "theta_mean_q2_verbatim", "<q^2> = N^2 {|k1|^2 w1 + |k2|^2 w2 - 2 Re[k1 k2* w2]}",
      [](const ThetaSample& t) { return cf::theta_mean_q2_verbatim(t.beta, t.k1, t.k2); },
      numeric_q2);
  theta_entry(
      "theta_mean_q2_corrected", "<q^2> = N^2 {|k1|^2 w1 + |k2|^2 w2 - 2 Re[k1 k2* w3]}",
      [](const ThetaSample& t) { return cf::theta_mean_q2(t.beta, t.k1, t.k2); }, numeric_q2);

  // -- Omega scalar closed forms over eta and two idler amplitudes.
  {
    Worst inv, f1, f2;
    for (double a : {0.01, 0.75}) {
      for (double eta : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        const ProtocolParams p = with_pointer(base, PointerInput::squeezed(eta, 0.0), a);
        const ConditionalOutput out = conditional_state_first_order(p);
        const ModeSpace space = out.state.modes().front();
        const std::map<std::string, double> at{{"alpha", a}, {"eta", eta}};
        const Complex l1 = out.coefficient1;
        const Complex l2 = out.coefficient2;
        inv.offer(cf::omega_inverse_norm_sq(eta, 0.0, l1, l2), out.p_model / out.p_zeroth, at);
        f1.offer(cf::omega_fidelity_sv(eta, 0.0, l1, l2),
                 fidelity(out.state, squeezed_vacuum(eta, 0.0, space)), at);
        f2.offer(cf::omega_fidelity_spasv(eta, 0.0, l1, l2),
                 fidelity(out.state, spasv(eta, 0.0, space)), at);
      }
    }
    std::map<std::string, double> params{{"g", base.g}, {"epsilon", base.epsilon}, {"phi", 0.0}};
    report.entries.push_back(make_entry(
        "omega_inverse_norm_sq",
        "chi^-2 = 1 + |l1|^2 sinh^2 - Re[l1 l2* e^{i phi}] sinh 2eta + |l2|^2 cosh^2", inv, params,
        false));
    report.entries.push_back(make_entry("omega_fidelity_sv", "F1 = |chi|^2", f1, params, false));
    report.entries.push_back(make_entry(
        "omega_fidelity_spasv", "F2 = |chi/cosh|^2 |e^{i phi} l1 sinh 2eta / 2 - l2 cosh^2|^2", f2,
        params, false));
  }

  // -- Theta Wigner function.
  for (const auto& t : thetas) {
    if (t.beta.real() > 2.0) continue;
    const WignerGrid numeric = wigner_numeric(t.state, grid);
    auto params = common;
    params["beta"] = t.beta.real();
    const std::string tag = std::to_string(static_cast<int>(t.beta.real() * 10));
    for (auto form : {cf::SpacWignerForm::kVerbatim, cf::SpacWignerForm::kCorrected}) {
      const bool verbatim = form == cf::SpacWignerForm::kVerbatim;
      const WignerGrid closed = wigner_closed_spac(t.beta, t.k1, t.k2, grid, form);
      report.entries.push_back(make_entry(
          std::string("theta_wigner_") + (verbatim ? "verbatim" : "corrected") + "_beta_x10_" + tag,
          verbatim ? "Theta Wigner, cross term Re[k2 k1* (2 Re b - z) e^{[(z-b)^2 + c.c.]/2}]"
                   : "Theta Wigner, cross term 2 Re[k1* k2 (2 z* - b*)] e^{-2|z-b|^2}",
          compare_grids(closed, numeric), params, false));
    }
  }
  {
    const ModeSpace space(24);
    const WignerGrid numeric = wigner_numeric(coherent_state(1.0, space), grid);
    const WignerGrid closed = wigner_closed_spac(1.0, 1.0, 0.0, grid);
    report.entries.push_back(make_entry("theta_wigner_coherent_limit",
                                        "Theta Wigner with k1 = 1, k2 = 0 vs |beta = 1>",
                                        compare_grids(closed, numeric),
                                        {{"beta", 1.0}, {"kappa1", 1.0}, {"kappa2", 0.0}}, true));
  }
  const WignerGrid fock1 = wigner_numeric(fock(1, ModeSpace(4)), grid);
  {
    const WignerGrid closed = wigner_closed_spac(0.0, 0.0, 1.0, grid);
    report.entries.push_back(make_entry("theta_wigner_fock1_limit",
                                        "Theta Wigner with k1 = 0, beta = 0 vs |1>",
                                        compare_grids(closed, fock1),
                                        {{"beta", 0.0}, {"kappa1", 0.0}, {"kappa2", 1.0}}, true));
  }

  // -- Omega Wigner function.
  for (double eta : {0.0, 1.0, 2.0}) {
    const ProtocolParams p = with_pointer(base, PointerInput::squeezed(eta, 0.0), alpha);
    const ConditionalOutput out = conditional_state_first_order(p);
    const WignerGridSpec& g = eta > 0.0 ? coarse : grid;
    const WignerGrid numeric = wigner_numeric(out.state, g);
    const WignerGrid closed = wigner_closed_spasv(eta, 0.0, out.coefficient1, out.coefficient2, g);
    auto params = common;
    params["eta"] = eta;
    params["phi"] = 0.0;
    report.entries.push_back(make_entry(
        "omega_wigner_verbatim_eta_" + std::to_string(static_cast<int>(eta)),
        "Omega Wigner, six-term form with z~ = z cosh - z* e^{i phi} sinh",
        compare_grids(closed, numeric), params, false));
  }
  {
    const WignerGrid numeric = wigner_numeric(vacuum(ModeSpace(4)), grid);
    const WignerGrid closed = wigner_closed_spasv(0.0, 0.0, 0.0, 0.0, grid);
    report.entries.push_back(make_entry("omega_wigner_vacuum_limit",
                                        "Omega Wigner with eta = 0, l1 = l2 = 0 vs |0>",
                                        compare_grids(closed, numeric),
                                        {{"eta", 0.0}, {"lambda1", 0.0}, {"lambda2", 0.0}}, true));
  }
  {
    const double l2 = 1e4;
    const WignerGrid closed = wigner_closed_spasv(0.0, 0.0, 0.0, l2, grid);
    report.entries.push_back(make_entry("omega_wigner_fock1_limit",
                                        "Omega Wigner with eta = 0, l1 = 0, l2 >> 1 vs |1>",
                                        compare_grids(closed, fock1),
                                        {{"eta", 0.0}, {"lambda1", 0.0}, {"lambda2", l2}}, true));
  }
  return report;
}

}  // namespace wmstate
