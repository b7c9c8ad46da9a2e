#include "wmstate/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace wmstate {

namespace {

constexpr int kMinSignalCutoff = 40;
constexpr int kMinIdlerCutoff = 6;

bool is_squeezed(const PointerInput& p) { return p.kind == PointerKind::kSqueezedVacuum; }

int round_up_even(int n) { return n % 2 == 0 ? n : n + 1; }

// Smallest output cutoff for which the pointer (prepared one level lower
// for non-squeezed inputs) and its photon-added reference both pass.
int required_signal_cutoff(const PointerInput& pointer) {
  if (is_squeezed(pointer)) {
    return round_up_even(
        std::max(minimal_cutoff(pointer), minimal_photon_added_cutoff(pointer)));
  }
  return std::max(minimal_cutoff(pointer) + 1, minimal_photon_added_cutoff(pointer));
}

// Pointer state living in the output space of cutoff n such that a^+ acting
// on it loses no amplitude. Squeezed states have zero amplitude on the odd
// top level of an even cutoff; everything else is prepared one level lower.
StateVector prepare_for_output(const PointerInput& pointer, int n) {
  if (is_squeezed(pointer)) return prepare(pointer, ModeSpace(n));
  return resize(prepare(pointer, ModeSpace(n - 1)), n);
}

CVector lower(const CVector& v) {
  CVector out = CVector::Zero(v.size());
  for (Eigen::Index n = 1; n < v.size(); ++n) out[n - 1] = std::sqrt(static_cast<double>(n)) * v[n];
  return out;
}

CVector raise(const CVector& v) {
  CVector out = CVector::Zero(v.size());
  for (Eigen::Index n = 1; n < v.size(); ++n) out[n] = std::sqrt(static_cast<double>(n)) * v[n - 1];
  return out;
}

void require_nonorthogonal(Complex alpha, double epsilon) {
  if (alpha * epsilon == Complex{0.0, 0.0}) {
    throw OrthogonalPostselectionError("alpha * epsilon == 0: postselection is orthogonal");
  }
}

// Truncates a density matrix to its leading n x n block and restores unit trace.
DensityMatrix truncate_density(const DensityMatrix& rho, int n) {
  CMatrix block = rho.matrix.topLeftCorner(n, n);
  const double tr = block.trace().real();
  if (tr <= 0.0) throw DegenerateError("truncated density matrix has zero trace");
  return {ModeList{ModeSpace(n)}, block / tr};
}

StateVector idler_input(Complex amplitude, int cutoff) {
  return coherent_state(amplitude, ModeSpace(cutoff));
}

}  // namespace

void ProtocolParams::validate() const {
  if (!(std::abs(alpha) < 1.0)) throw ParameterError("|alpha| must be < 1");
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw ParameterError("epsilon must lie in (0, 0.5]");
  if (!(g >= 0.0) || !std::isfinite(g)) throw ParameterError("g must be >= 0");
  if (idler_cutoff != 0 && idler_cutoff < 4) throw ParameterError("idler cutoff must be >= 4");
  if (signal_cutoff < 0) throw ParameterError("signal cutoff must be >= 0");
}

int ProtocolParams::resolved_signal_cutoff() const {
  const int need = required_signal_cutoff(pointer);
  if (signal_cutoff == 0) {
    const int n = std::max(kMinSignalCutoff, need);
    return is_squeezed(pointer) ? round_up_even(n) : n;
  }
  if (signal_cutoff < need || (is_squeezed(pointer) && signal_cutoff % 2 != 0)) {
    throw TruncationError("signal cutoff " + std::to_string(signal_cutoff) +
                          " below the guard for this pointer (needs " + std::to_string(need) +
                          (is_squeezed(pointer) ? ", even)" : ")"));
  }
  return signal_cutoff;
}

int ProtocolParams::resolved_idler_cutoff() const {
  const auto pre = preselection_amplitudes(alpha, epsilon);
  const int need = std::max(minimal_cutoff(PointerInput::coherent(pre.transmitted)),
                            minimal_cutoff(PointerInput::coherent(pre.reflected)));
  if (idler_cutoff == 0) return std::max(kMinIdlerCutoff, need);
  if (idler_cutoff < need) {
    throw TruncationError("idler cutoff " + std::to_string(idler_cutoff) +
                          " below the coherent guard (needs " + std::to_string(need) + ")");
  }
  return idler_cutoff;
}

Complex BeamSplitterSpec::transmittance() const { return std::polar(std::cos(theta), phi_t); }

Complex BeamSplitterSpec::reflectance() const { return std::polar(std::sin(theta), phi_r); }

Eigen::Matrix2cd BeamSplitterSpec::scattering_matrix() const {
  const Complex t = transmittance();
  const Complex r = reflectance();
  Eigen::Matrix2cd u;
  u << t, r, -std::conj(r), std::conj(t);
  return u;
}

Eigen::Vector2cd BeamSplitterSpec::transform(const Eigen::Vector2cd& inputs) const {
  return scattering_matrix() * inputs;
}

PreselectionAmplitudes preselection_amplitudes(Complex alpha, double epsilon) {
  const double s = std::numbers::sqrt2;
  return {alpha * (1.0 - epsilon) / s, kI * alpha * (1.0 + epsilon) / s};
}

WeakValues weak_values(Complex alpha, double epsilon) {
  require_nonorthogonal(alpha, epsilon);
  const Complex inv = 1.0 / (2.0 * alpha * epsilon);
  return {alpha / 2.0 - inv, kI * inv + kI * alpha / 2.0};
}

double postselection_probability(Complex alpha, double epsilon) {
  return std::norm(alpha * epsilon);
}

StateVector postselection_ket(int idler_cutoff) {
  const ModeSpace arm(idler_cutoff);
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(idler_cutoff) * idler_cutoff);
  amp[1 * idler_cutoff + 0] = 1.0 / std::numbers::sqrt2;  // |1>_t |0>_r
  amp[0 * idler_cutoff + 1] = -kI / std::numbers::sqrt2;  // |0>_t |1>_r
  return StateVector(ModeList{arm, arm}, std::move(amp));
}

WeakValues exact_weak_values(Complex alpha, double epsilon, int idler_cutoff) {
  require_nonorthogonal(alpha, epsilon);
  ProtocolParams p;
  p.alpha = alpha;
  p.epsilon = epsilon;
  p.idler_cutoff = idler_cutoff;
  const int nt = p.resolved_idler_cutoff();
  const auto pre = preselection_amplitudes(alpha, epsilon);
  const StateVector psi_i = tensor(idler_input(pre.transmitted, nt), idler_input(pre.reflected, nt));
  const StateVector psi_f = postselection_ket(nt);

  const ModeSpace arm(nt);
  const Operator b = tensor(annihilator(arm), identity(arm));
  const Operator bd = b.adjoint();
  const Complex overlap = inner_product(psi_f, psi_i);
  if (std::abs(overlap) == 0.0) {
    throw OrthogonalPostselectionError("exact_weak_values: <psi_f|psi_i> vanished");
  }
  const Complex b_w = inner_product(psi_f, b.apply(psi_i)) / overlap;
  const Complex bd_w = inner_product(psi_f, bd.apply(psi_i)) / overlap;
  const double s = std::numbers::sqrt2;
  return {(b_w + bd_w) / s, kI * (b_w - bd_w) / s};
}

Operator interaction_generator(double g, ModeSpace signal, ModeSpace idler) {
  const Operator a = annihilator(signal);
  const Operator b = annihilator(idler);
  const Operator pair = tensor(a.adjoint(), b.adjoint());
  return Complex{g, 0.0} * (pair - pair.adjoint());
}

ConditionalOutput conditional_state_first_order(const ProtocolParams& params) {
  params.validate();
  require_nonorthogonal(params.alpha, params.epsilon);
  const int n = params.resolved_signal_cutoff();
  const StateVector psi0 = prepare_for_output(params.pointer, n);

  const double s = std::numbers::sqrt2;
  const Complex lambda1 = params.g * params.alpha / s;
  const Complex lambda2 = params.g / (s * params.alpha * params.epsilon);

  const CVector& v = psi0.amplitudes();
  CVector out = v - lambda1 * lower(v) - lambda2 * raise(v);

  ConditionalOutput result{StateVector(psi0.modes(), out), 0.0, 0.0, CoefficientKind::kKappa,
                           {}, {}};
  result.p_zeroth = postselection_probability(params.alpha, params.epsilon);
  result.p_model = result.p_zeroth * out.squaredNorm();
  result.state = result.state.normalized();
  if (is_squeezed(params.pointer)) {
    result.kind = CoefficientKind::kLambda;
    result.coefficient1 = lambda1;
    result.coefficient2 = lambda2;
  } else {
    const Complex beta = params.pointer.kind == PointerKind::kCoherent ? params.pointer.beta : 0.0;
    result.coefficient1 = 1.0 - lambda1 * beta;
    result.coefficient2 = lambda2;
  }
  return result;
}

namespace {

struct EvolvedInput {
  int output_cutoff;
  ModeSpace signal;
  ModeSpace idler;
  StateVector input;  // pointer (x) |alpha_t>
  Operator generator;
};

EvolvedInput build_signal_transmitted(const ProtocolParams& params, const ExactOptions& options) {
  params.validate();
  if (options.signal_margin < 0 || options.signal_margin % 2 != 0) {
    throw ParameterError("signal margin must be even and >= 0");
  }
  const int n = params.resolved_signal_cutoff();
  const int nt = params.resolved_idler_cutoff();
  const ModeSpace signal(n + options.signal_margin);
  const ModeSpace idler(nt);
  const auto pre = preselection_amplitudes(params.alpha, params.epsilon);
  StateVector input = tensor(prepare(params.pointer, signal), idler_input(pre.transmitted, nt));
  return {n, signal, idler, std::move(input), interaction_generator(params.g, signal, idler)};
}

}  // namespace

ConditionalOutput conditional_state_exact(const ProtocolParams& params,
                                          const ExactOptions& options) {
  const EvolvedInput sys = build_signal_transmitted(params, options);
  const auto pre = preselection_amplitudes(params.alpha, params.epsilon);
  const int nt = sys.idler.cutoff();

  // U acts on signal (x) t; the reflected arm only joins for the projection.
  const StateVector evolved = apply_exponential(sys.generator, sys.input, options.tol);
  const StateVector full = tensor(evolved, idler_input(pre.reflected, nt));
  const std::array<int, 2> idler_modes{1, 2};
  const StateVector conditional = contract_bra(full, postselection_ket(nt), idler_modes);

  ConditionalOutput result{resize(conditional, sys.output_cutoff), 0.0, 0.0,
                           CoefficientKind::kKappa, {}, {}};
  result.p_zeroth = postselection_probability(params.alpha, params.epsilon);
  result.p_model = conditional.squared_norm();
  result.state = result.state.normalized();

  const double s = std::numbers::sqrt2;
  const Complex lambda1 = params.g * params.alpha / s;
  const Complex lambda2 =
      params.alpha * params.epsilon == Complex{} ? Complex{} : params.g / (s * params.alpha * params.epsilon);
  if (is_squeezed(params.pointer)) {
    result.kind = CoefficientKind::kLambda;
    result.coefficient1 = lambda1;
  } else {
    const Complex beta = params.pointer.kind == PointerKind::kCoherent ? params.pointer.beta : 0.0;
    result.coefficient1 = 1.0 - lambda1 * beta;
  }
  result.coefficient2 = lambda2;
  return result;
}

NonpostselectedPointer nonpostselected_pointer(const ProtocolParams& params, ExpansionPath path,
                                               const ExactOptions& options) {
  const EvolvedInput sys = build_signal_transmitted(params, options);
  const Operator q_signal = quadrature(sys.signal, 0.0);
  const Operator q = tensor(q_signal, identity(sys.idler));
  const Operator q2 = tensor(q_signal * q_signal, identity(sys.idler));
  const std::array<int, 1> keep{0};

  NonpostselectedPointer out;
  if (path == ExpansionPath::kExact) {
    const StateVector evolved = apply_exponential(sys.generator, sys.input, options.tol);
    out.rho = truncate_density(partial_trace(evolved, keep), sys.output_cutoff);
    out.mean_q = expectation(q, evolved).real();
    out.mean_q2 = expectation(q2, evolved).real();
    return out;
  }

  const StateVector& in = sys.input;
  const StateVector g_in = sys.generator.apply(in);
  const StateVector first = StateVector(in.modes(), in.amplitudes() + g_in.amplitudes()).normalized();
  out.rho = truncate_density(partial_trace(first, keep), sys.output_cutoff);

  // <O> + <in|[O, G]|in>, first order in g.
  auto linearized = [&](const Operator& o) {
    const Complex base = expectation(o, in);
    const Complex commutator = inner_product(in, o.apply(g_in)) -
                               inner_product(in, sys.generator.apply(o.apply(in)));
    return (base + commutator).real();
  };
  out.mean_q = linearized(q);
  out.mean_q2 = linearized(q2);
  return out;
}

}  // namespace wmstate
