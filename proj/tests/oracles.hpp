#pragma once

// Reference values computed independently of the library code paths under
// test: closed forms written out directly, and brute-force evaluations.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

inline double factorial(int n) { return std::tgamma(n + 1.0); }

/// <n|beta> for small n, straight from the series.
inline Complex coherent_amp(Complex beta, int n) {
  return std::exp(-0.5 * std::norm(beta)) * std::pow(beta, n) / std::sqrt(factorial(n));
}

/// Two-mode squeezed vacuum exp(g (a+b+ - ab))|00>: amplitude of |n,n>.
inline double tmsv_amp(double g, int n) { return std::pow(std::tanh(g), n) / std::cosh(g); }

/// Mean occupation of either TMSV marginal.
inline double thermal_mean(double g) { return std::sinh(g) * std::sinh(g); }

/// Coherent-state Wigner function (2/pi) exp(-2|z - beta|^2).
inline double coherent_wigner(Complex z, Complex beta) {
  return 2.0 / std::numbers::pi * std::exp(-2.0 * std::norm(z - beta));
}

/// Fock |1> Wigner function (2/pi)(4|z|^2 - 1) exp(-2|z|^2).
inline double fock1_wigner(Complex z) {
  return 2.0 / std::numbers::pi * (4.0 * std::norm(z) - 1.0) * std::exp(-2.0 * std::norm(z));
}

/// Squeezed vacuum Wigner for S = exp((xi* a^2 - xi a+^2)/2), phi = 0:
/// x variance e^{-2 eta}/4, p variance e^{2 eta}/4.
inline double squeezed_wigner_phi0(Complex z, double eta) {
  const double x = z.real(), p = z.imag();
  return 2.0 / std::numbers::pi * std::exp(-2.0 * (x * x * std::exp(2.0 * eta) + p * p * std::exp(-2.0 * eta)));
}

/// Brute-force displaced parity: (2/pi) sum_n (-1)^n |<n| exp(-z a+ + z* a) psi>|^2.
/// The state is embedded in a larger space and the displacement is summed as
/// a plain Taylor series of the generator (no scaling), which is adequate for
/// the small |z| and dimensions used in tests.
inline double displaced_parity(const Eigen::VectorXcd& psi, Complex z, int big = 80) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(big, big);
  for (int n = 1; n < big; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXcd gen = -z * a.adjoint() + std::conj(z) * a;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(big);
  v.head(psi.size()) = psi;
  Eigen::VectorXcd term = v, sum = v;
  for (int k = 1; k < 400; ++k) {
    term = gen * term / static_cast<double>(k);
    sum += term;
    if (term.norm() < 1e-18) break;
  }
  double w = 0.0;
  for (int n = 0; n < big; ++n) w += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(sum[n]);
  return 2.0 / std::numbers::pi * w;
}

}  // namespace oracle
