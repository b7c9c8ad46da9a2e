#pragma once

// Verification quantities: fidelity, photon statistics, quadrature squeezing
// and the postselected / nonpostselected SNR ratio.

#include "wmstate/fock.hpp"
#include "wmstate/protocol.hpp"

namespace wmstate {

/// |<s1|s2>|^2 / (|s1|^2 |s2|^2). Throws DimensionMismatchError when the
/// mode lists differ.
double fidelity(const StateVector& s1, const StateVector& s2);

struct PhotonStats {
  double mean_n = 0.0;
  /// <a^+2 a^2> / <a^+ a>^2.
  double g2 = 0.0;
  /// mean_n (g2 - 1).
  double mandel_q = 0.0;
};

/// Moments from ladder-operator action in the truncated space. Throws
/// DegenerateError when <n> vanishes (g2 is 0/0), ModeMismatchError for
/// multi-mode input.
PhotonStats photon_stats(const StateVector& state);
PhotonStats photon_stats(const DensityMatrix& rho);

/// S_phi = Var(X_phi) - 1/2.
double squeezing(const StateVector& state, double phi);
double squeezing(const DensityMatrix& rho, double phi);

struct SqueezingExtremum {
  double value = 0.0;
  double phi = 0.0;
};

/// Minimum of S_phi over the quadrature angle, <da^+ da> - |<da^2>|,
/// attained at phi = arg(<da^2>)/2 + pi/2.
SqueezingExtremum min_squeezing(const StateVector& state);

struct SnrReport {
  double chi = 0.0;
  double r_post_per_sqrtN = 0.0;
  double r_non_per_sqrtN = 0.0;
  double delta_q = 0.0;
  double delta_q_prime = 0.0;
  double variance_post = 0.0;
  double variance_non = 0.0;
  double p_zeroth = 0.0;
  double p_model = 0.0;
};

/// SNR ratio for a coherent pointer |beta>: the pointer in `params` is
/// replaced by coherent(beta). The postselected rate uses p_zeroth = |alpha eps|^2.
/// kFirstOrder takes the postselected state from the first-order expansion
/// and the nonpostselected moments linearized in g; kExact uses the
/// three-mode simulation for both. Throws DegenerateError at g == 0 or
/// whenever a shift or variance vanishes.
SnrReport snr_ratio(const ProtocolParams& params, Complex beta,
                    ExpansionPath path = ExpansionPath::kFirstOrder);

}  // namespace wmstate
