#pragma once

// Analytic expressions for the two generated states, used as cross-checks
// against the truncated-space numerics.
//
//   Theta = N (k1 |beta> - k2 a^+ |beta>)             coherent pointer
//   Omega = chi (|xi> - l1 a |xi> - l2 a^+ |xi>)      squeezed pointer
//
// Where a printed expression is ambiguous or wrong, both the printed
// ("verbatim") form and the re-derived form are provided.

#include "wmstate/fock.hpp"

namespace wmstate::closed_form {

/// N = [|k1|^2 + |k2|^2 (1 + |beta|^2) - 2 Re(k1 k2* beta)]^{-1/2}.
double theta_normalization(Complex beta, Complex k1, Complex k2);

/// |<beta|Theta>|^2 = |N (k1 - k2 beta*)|^2.
double theta_fidelity_coherent(Complex beta, Complex k1, Complex k2);
/// |<1,beta|Theta>|^2 = N^2 |k1 beta - k2 (1 + |beta|^2)|^2 / (1 + |beta|^2).
double theta_fidelity_spac(Complex beta, Complex k1, Complex k2);

/// <a^+ a>: N^2 {|k1|^2|b|^2 - 2 Re[k1 k2* (b + |b|^2 b)] + |k2|^2 (3|b|^2 + |b|^4 + 1)}.
double theta_mean_n(Complex beta, Complex k1, Complex k2);
/// <a^+2 a^2>, cross term read as -2 Re[k1 k2* (2|b|^2 b + |b|^4 b)].
double theta_a2_moment(Complex beta, Complex k1, Complex k2);

double h1(Complex beta);
double h2(Complex beta);
Complex h3(Complex beta);
double w1(Complex beta);
double w2(Complex beta);
Complex w3(Complex beta);

/// <q> = N^2 {|k1|^2 h1 + |k2|^2 h2 - 2 Re[k1 k2* h3]}.
double theta_mean_q(Complex beta, Complex k1, Complex k2);
/// <q^2> with the cross term as printed (w2 inside the Re[...]).
double theta_mean_q2_verbatim(Complex beta, Complex k1, Complex k2);
/// <q^2> with the cross term -2 Re[k1 k2* w3].
double theta_mean_q2(Complex beta, Complex k1, Complex k2);

/// chi^{-2} = 1 + |l1|^2 sinh^2 - Re[l1 l2* e^{i phi}] sinh 2eta + |l2|^2 cosh^2.
double omega_inverse_norm_sq(double eta, double phi, Complex l1, Complex l2);
/// |<xi|Omega>|^2 = chi^2.
double omega_fidelity_sv(double eta, double phi, Complex l1, Complex l2);
/// |chi / cosh|^2 |e^{i phi} l1 sinh(2 eta) / 2 - l2 cosh^2|^2.
double omega_fidelity_spasv(double eta, double phi, Complex l1, Complex l2);

enum class SpacWignerForm {
  /// Cross term as printed: -Re[k2 k1* (2 Re b - z) e^{[(z-b)^2 + c.c.]/2}].
  kVerbatim,
  /// Cross term -2 Re[k1* k2 (2 z* - b*)] e^{-2|z-b|^2}.
  kCorrected,
};

/// Wigner function of Theta at z = x + i p (coherent-amplitude units).
double theta_wigner(Complex z, Complex beta, Complex k1, Complex k2, SpacWignerForm form);

/// Wigner function of Omega as printed, with z~ = z cosh - z* e^{i phi} sinh,
/// tau and mu as given; the real part of the (formally complex) w5 term is kept.
double omega_wigner_verbatim(Complex z, double eta, double phi, Complex l1, Complex l2);

}  // namespace wmstate::closed_form
