// Python module wmstate._core. Single-mode states cross the boundary as
// complex numpy vectors; run settings as {key: value} dicts applied over the
// default configuration.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wmstate/config.hpp"
#include "wmstate/deviations.hpp"
#include "wmstate/errors.hpp"
#include "wmstate/figures.hpp"
#include "wmstate/metrics.hpp"
#include "wmstate/protocol.hpp"
#include "wmstate/states.hpp"
#include "wmstate/wigner.hpp"

namespace py = pybind11;
using namespace wmstate;

namespace {

using Settings = std::map<std::string, std::string>;

Config make_config(const Settings& settings) {
  Config c;
  for (const auto& [k, v] : settings) c.set(k, v);
  return c;
}

StateVector single_mode(const CVector& amps) {
  if (amps.size() < 1) throw DimensionMismatchError("empty state vector");
  return StateVector(ModeSpace(static_cast<int>(amps.size())), amps);
}

py::dict photon_dict(const PhotonStats& st) {
  py::dict d;
  d["mean_n"] = st.mean_n;
  d["g2"] = st.g2;
  d["mandel_q"] = st.mandel_q;
  return d;
}

py::dict conditional(const Settings& settings, bool exact) {
  const Config c = make_config(settings);
  const ProtocolParams p = c.protocol();
  const ConditionalOutput out =
      exact ? conditional_state_exact(p, c.exact_options()) : conditional_state_first_order(p);
  py::dict d;
  d["amplitudes"] = out.state.amplitudes();
  d["p_zeroth"] = out.p_zeroth;
  d["p_model"] = out.p_model;
  d["kind"] = out.kind == CoefficientKind::kKappa ? "kappa" : "lambda";
  d["coefficient1"] = out.coefficient1;
  d["coefficient2"] = out.coefficient2;
  return d;
}

py::dict table_dict(const Table& t) {
  py::dict d;
  d["columns"] = t.columns;
  d["rows"] = t.rows;
  return d;
}

WignerGridSpec grid_from(const Settings& settings) { return make_config(settings).grid(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weak-measurement pointer state preparation in a truncated Fock space";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto numeric = py::register_exception<NumericError>(m, "NumericError", error.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", numeric.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", numeric.ptr());
  py::register_exception<DegenerateError>(m, "DegenerateError", numeric.ptr());
  py::register_exception<OrthogonalPostselectionError>(m, "OrthogonalPostselectionError", numeric.ptr());
  auto usage = py::register_exception<UsageError>(m, "UsageError", error.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", usage.ptr());
  py::register_exception<ModeMismatchError>(m, "ModeMismatchError", usage.ptr());
  py::register_exception<DimensionMismatchError>(m, "DimensionMismatchError", usage.ptr());
  py::register_exception<IndexError>(m, "IndexError", usage.ptr());
  py::register_exception<RangeError>(m, "RangeError", usage.ptr());
  py::register_exception<UnknownFigureError>(m, "UnknownFigureError", usage.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());

  m.attr("__version__") = kToolVersion;

  m.def("vacuum", [](int cutoff) { return vacuum(ModeSpace(cutoff)).amplitudes(); }, py::arg("cutoff"));
  m.def("fock", [](int n, int cutoff) { return fock(n, ModeSpace(cutoff)).amplitudes(); }, py::arg("n"),
        py::arg("cutoff"));
  m.def("coherent_state", [](Complex beta, int cutoff) { return coherent_state(beta, ModeSpace(cutoff)).amplitudes(); },
        py::arg("beta"), py::arg("cutoff"));
  m.def("squeezed_vacuum",
        [](double eta, double phi, int cutoff) { return squeezed_vacuum(eta, phi, ModeSpace(cutoff)).amplitudes(); },
        py::arg("eta"), py::arg("phi"), py::arg("cutoff"));
  m.def("spac", [](Complex beta, int cutoff) { return spac(beta, ModeSpace(cutoff)).amplitudes(); },
        py::arg("beta"), py::arg("cutoff"));
  m.def("spasv", [](double eta, double phi, int cutoff) { return spasv(eta, phi, ModeSpace(cutoff)).amplitudes(); },
        py::arg("eta"), py::arg("phi"), py::arg("cutoff"));
  m.def("minimal_cutoff", [](double eta, double phi) { return minimal_cutoff(PointerInput::squeezed(eta, phi)); },
        py::arg("eta"), py::arg("phi") = 0.0, "Smallest even cutoff holding S(xi)|0> to 1e-8.");

  m.def("fidelity", [](const CVector& a, const CVector& b) { return fidelity(single_mode(a), single_mode(b)); },
        py::arg("a"), py::arg("b"));
  m.def("photon_stats", [](const CVector& a) { return photon_dict(photon_stats(single_mode(a))); },
        py::arg("state"));
  m.def("squeezing", [](const CVector& a, double phi) { return squeezing(single_mode(a), phi); }, py::arg("state"),
        py::arg("phi"));
  m.def("min_squeezing",
        [](const CVector& a) {
          const SqueezingExtremum e = min_squeezing(single_mode(a));
          return py::make_tuple(e.value, e.phi);
        },
        py::arg("state"));

  m.def("weak_values",
        [](Complex alpha, double eps) {
          const WeakValues w = weak_values(alpha, eps);
          return py::make_tuple(w.A_w, w.B_w);
        },
        py::arg("alpha"), py::arg("epsilon"));
  m.def("exact_weak_values",
        [](Complex alpha, double eps) {
          const WeakValues w = exact_weak_values(alpha, eps);
          return py::make_tuple(w.A_w, w.B_w);
        },
        py::arg("alpha"), py::arg("epsilon"));
  m.def("postselection_probability", &postselection_probability, py::arg("alpha"), py::arg("epsilon"));

  m.def("conditional_state", &conditional, py::arg("settings") = Settings{}, py::arg("exact") = false);
  m.def("snr_ratio",
        [](const Settings& settings, Complex beta, bool exact) {
          const Config c = make_config(settings);
          const SnrReport r =
              snr_ratio(c.protocol(), beta, exact ? ExpansionPath::kExact : ExpansionPath::kFirstOrder);
          py::dict d;
          d["chi"] = r.chi;
          d["r_post_per_sqrtN"] = r.r_post_per_sqrtN;
          d["r_non_per_sqrtN"] = r.r_non_per_sqrtN;
          d["delta_q"] = r.delta_q;
          d["delta_q_prime"] = r.delta_q_prime;
          d["variance_post"] = r.variance_post;
          d["variance_non"] = r.variance_non;
          d["p_zeroth"] = r.p_zeroth;
          d["p_model"] = r.p_model;
          return d;
        },
        py::arg("settings") = Settings{}, py::arg("beta") = Complex{1.0, 0.0}, py::arg("exact") = false);

  m.def("wigner",
        [](const CVector& a, const Settings& settings) {
          const WignerGrid w = wigner_numeric(single_mode(a), grid_from(settings));
          Eigen::VectorXd xs(w.spec.nx), ps(w.spec.np);
          for (int i = 0; i < w.spec.nx; ++i) xs[i] = w.spec.x_at(i);
          for (int j = 0; j < w.spec.np; ++j) ps[j] = w.spec.p_at(j);
          return py::make_tuple(xs, ps, Eigen::MatrixXd(w.values));
        },
        py::arg("state"), py::arg("settings") = Settings{},
        "Returns (x, p, W) with W[i, j] = W(x[i] + i p[j]); the grid comes from the grid_* settings.");

  m.def("figure_ids", &figure_ids);
  m.def("figure",
        [](const std::string& id, const Settings& settings) {
          py::list out;
          for (const Series& s : compute_figure(id, make_config(settings))) {
            py::dict d = table_dict(s.table);
            d["name"] = s.name;
            d["extras"] = s.extras;
            out.append(d);
          }
          return out;
        },
        py::arg("id"), py::arg("settings") = Settings{});
  m.def("run_figure",
        [](const std::string& id, const std::string& out_dir, const Settings& settings) {
          std::vector<std::string> paths;
          for (const auto& p : run_figure(id, make_config(settings), out_dir)) paths.push_back(p.string());
          return paths;
        },
        py::arg("id"), py::arg("out_dir"), py::arg("settings") = Settings{});
  m.def("sweep",
        [](const std::string& var, const std::string& range, const std::vector<std::string>& metrics,
           const Settings& settings) {
          return table_dict(sweep(SweepSpec::parse(var, range), metrics, make_config(settings)));
        },
        py::arg("var"), py::arg("range"), py::arg("metrics"), py::arg("settings") = Settings{});
  m.def("deviations_json", [](const Settings& settings) { return compute_deviations(make_config(settings)).to_json(); },
        py::arg("settings") = Settings{});
}
