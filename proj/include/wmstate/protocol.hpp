#pragma once

// Postselected weak-measurement state preparation.
//
// The idler (measured system) enters a slightly unbalanced beam splitter,
// giving coherent amplitudes alpha_t and alpha_r in the transmitted and
// reflected arms. The transmitted arm interacts with the signal (pointer)
// through U = exp(g (a^+ b_t^+ - a b_t)); a 50:50 splitter and a click
// pattern D2 = 1, D1 = 0 postselect the idler onto
// |psi_f> = (|1>_t|0>_r - i|0>_t|1>_r) / sqrt(2).
//
// Two routes produce the conditional pointer state:
//   * first order in g, using the weak values (the analytic route), and
//   * an exact simulation on signal (x) t (x) r used as its oracle.

#include <Eigen/Dense>

#include "wmstate/fock.hpp"
#include "wmstate/states.hpp"

namespace wmstate {

struct ProtocolParams {
  double g = 0.105;
  Complex alpha{0.01, 0.0};
  double epsilon = 0.1;
  PointerInput pointer;
  /// Output signal cutoff. 0 selects the smallest cutoff (at least 40) that
  /// passes the truncation guard for the pointer and its photon-added form.
  int signal_cutoff = 0;
  /// Cutoff of each idler arm. 0 selects max(6, coherent guard of the arms).
  int idler_cutoff = 0;

  /// Throws ParameterError when |alpha| >= 1, epsilon outside (0, 0.5],
  /// g < 0, or an explicit idler cutoff below 4.
  void validate() const;
  /// Throws TruncationError when an explicit cutoff is below the guard.
  int resolved_signal_cutoff() const;
  int resolved_idler_cutoff() const;
};

/// Scattering matrix [[T, R], [-R*, T*]] with T = cos(theta) e^{i phi_t},
/// R = sin(theta) e^{i phi_r}.
struct BeamSplitterSpec {
  double theta = 0.7853981633974483;
  double phi_t = 0.0;
  double phi_r = 0.0;

  Complex transmittance() const;
  Complex reflectance() const;
  Eigen::Matrix2cd scattering_matrix() const;
  /// Output annihilation operators b_k = sum_j U_kj a_j applied to classical
  /// input amplitudes.
  Eigen::Vector2cd transform(const Eigen::Vector2cd& inputs) const;

  static BeamSplitterSpec balanced() { return {}; }
};

struct PreselectionAmplitudes {
  Complex transmitted;
  Complex reflected;
};

/// alpha_t = alpha (1 - eps) / sqrt 2, alpha_r = i alpha (1 + eps) / sqrt 2.
PreselectionAmplitudes preselection_amplitudes(Complex alpha, double epsilon);

struct WeakValues {
  Complex A_w;
  Complex B_w;
};

/// A_w = alpha/2 - 1/(2 alpha eps), B_w = i/(2 alpha eps) + i alpha/2.
/// Throws OrthogonalPostselectionError when alpha * eps == 0.
WeakValues weak_values(Complex alpha, double epsilon);

/// Weak values of A and B from exact idler matrix elements
/// <psi_f|O|psi_i> / <psi_f|psi_i> in the (t, r) Fock space.
WeakValues exact_weak_values(Complex alpha, double epsilon, int idler_cutoff = 0);

/// |alpha eps|^2.
double postselection_probability(Complex alpha, double epsilon);

/// Postselected idler ket (|1>_t|0>_r - i|0>_t|1>_r) / sqrt 2, modes (t, r).
StateVector postselection_ket(int idler_cutoff);

enum class CoefficientKind {
  /// Coherent or vacuum pointer: kappa1 |beta> - kappa2 a^+ |beta>.
  kKappa,
  /// Squeezed pointer: |xi> - lambda1 a|xi> - lambda2 a^+|xi>.
  kLambda,
};

struct ConditionalOutput {
  StateVector state;
  /// Zeroth-order success probability |alpha eps|^2.
  double p_zeroth = 0.0;
  /// Branch weight times the squared norm of the unnormalized conditional
  /// vector (first order), or the squared norm of the contraction (exact).
  double p_model = 0.0;
  CoefficientKind kind = CoefficientKind::kKappa;
  Complex coefficient1;
  Complex coefficient2;
};

ConditionalOutput conditional_state_first_order(const ProtocolParams& params);

struct ExactOptions {
  /// Extra signal levels simulated above the output cutoff.
  int signal_margin = 8;
  double tol = 1e-14;
};

ConditionalOutput conditional_state_exact(const ProtocolParams& params,
                                          const ExactOptions& options = {});

enum class ExpansionPath { kFirstOrder, kExact };

struct NonpostselectedPointer {
  DensityMatrix rho;
  double mean_q = 0.0;
  double mean_q2 = 0.0;

  double variance_q() const { return mean_q2 - mean_q * mean_q; }
};

/// Signal state without postselection: both idler arms traced out.
/// kExact evolves under U. kFirstOrder keeps (I + G)|in>; its moments are
/// linear in g, <O> = <O>_in + <[O, G]>_in, consistent with the expansion.
NonpostselectedPointer nonpostselected_pointer(const ProtocolParams& params,
                                               ExpansionPath path = ExpansionPath::kFirstOrder,
                                               const ExactOptions& options = {});

/// g (a^+ b^+ - a b) on signal (x) idler.
Operator interaction_generator(double g, ModeSpace signal, ModeSpace idler);

}  // namespace wmstate
