#include "wmstate/closed_forms.hpp"

#include <cmath>
#include <numbers>

namespace wmstate::closed_form {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

double n_sq(Complex beta, Complex k1, Complex k2) {
  const double n = theta_normalization(beta, k1, k2);
  return n * n;
}

}  // namespace

double theta_normalization(Complex beta, Complex k1, Complex k2) {
  const double b2 = std::norm(beta);
  const double inv = std::norm(k1) + std::norm(k2) * (1.0 + b2) -
                     2.0 * (k1 * std::conj(k2) * beta).real();
  if (!(inv > 0.0)) throw DegenerateError("theta_normalization: zero state");
  return 1.0 / std::sqrt(inv);
}

double theta_fidelity_coherent(Complex beta, Complex k1, Complex k2) {
  return n_sq(beta, k1, k2) * std::norm(k1 - k2 * std::conj(beta));
}

double theta_fidelity_spac(Complex beta, Complex k1, Complex k2) {
  const double b2 = std::norm(beta);
  return n_sq(beta, k1, k2) * std::norm(k1 * beta - k2 * (1.0 + b2)) / (1.0 + b2);
}

double theta_mean_n(Complex beta, Complex k1, Complex k2) {
  const double b2 = std::norm(beta);
  const Complex cross = k1 * std::conj(k2) * (beta + b2 * beta);
  return n_sq(beta, k1, k2) *
         (std::norm(k1) * b2 - 2.0 * cross.real() + std::norm(k2) * (3.0 * b2 + b2 * b2 + 1.0));
}

double theta_a2_moment(Complex beta, Complex k1, Complex k2) {
  const double b2 = std::norm(beta);
  const Complex cross = k1 * std::conj(k2) * (2.0 * b2 * beta + b2 * b2 * beta);
  return n_sq(beta, k1, k2) * (std::norm(k1) * b2 * b2 - 2.0 * cross.real() +
                               std::norm(k2) * (5.0 * b2 * b2 + b2 * b2 * b2 + 4.0 * b2));
}

double h1(Complex beta) { return kSqrt2 * beta.real(); }

double h2(Complex beta) { return kSqrt2 * (2.0 + std::norm(beta)) * beta.real(); }

Complex h3(Complex beta) { return (1.0 + std::norm(beta) + beta * beta) / kSqrt2; }

double w1(Complex beta) {
  return 0.5 * (2.0 * (beta * beta).real() + 2.0 * std::norm(beta) + 1.0);
}

double w2(Complex beta) {
  const double b2 = std::norm(beta);
  return 0.5 * (3.0 + 7.0 * b2 + 2.0 * b2 * b2 + 2.0 * (3.0 + b2) * (beta * beta).real());
}

Complex w3(Complex beta) {
  const double b2 = std::norm(beta);
  const Complex bc = std::conj(beta);
  return 0.5 * (3.0 * beta + beta * beta * beta + 2.0 * bc + bc * b2 + 2.0 * beta * b2);
}

double theta_mean_q(Complex beta, Complex k1, Complex k2) {
  return n_sq(beta, k1, k2) * (std::norm(k1) * h1(beta) + std::norm(k2) * h2(beta) -
                               2.0 * (k1 * std::conj(k2) * h3(beta)).real());
}

double theta_mean_q2_verbatim(Complex beta, Complex k1, Complex k2) {
  return n_sq(beta, k1, k2) * (std::norm(k1) * w1(beta) + std::norm(k2) * w2(beta) -
                               2.0 * (k1 * std::conj(k2) * w2(beta)).real());
}

double theta_mean_q2(Complex beta, Complex k1, Complex k2) {
  return n_sq(beta, k1, k2) * (std::norm(k1) * w1(beta) + std::norm(k2) * w2(beta) -
                               2.0 * (k1 * std::conj(k2) * w3(beta)).real());
}

double omega_inverse_norm_sq(double eta, double phi, Complex l1, Complex l2) {
  const double sh = std::sinh(eta);
  const double ch = std::cosh(eta);
  return 1.0 + std::norm(l1) * sh * sh -
         (l1 * std::conj(l2) * std::polar(1.0, phi)).real() * std::sinh(2.0 * eta) +
         std::norm(l2) * ch * ch;
}

double omega_fidelity_sv(double eta, double phi, Complex l1, Complex l2) {
  return 1.0 / omega_inverse_norm_sq(eta, phi, l1, l2);
}

double omega_fidelity_spasv(double eta, double phi, Complex l1, Complex l2) {
  const double ch = std::cosh(eta);
  const Complex amp = 0.5 * std::polar(1.0, phi) * l1 * std::sinh(2.0 * eta) - l2 * ch * ch;
  return omega_fidelity_sv(eta, phi, l1, l2) / (ch * ch) * std::norm(amp);
}

double theta_wigner(Complex z, Complex beta, Complex k1, Complex k2, SpacWignerForm form) {
  const double gauss = std::exp(-2.0 * std::norm(z - beta));
  const double coherent = std::norm(k1) * gauss;
  const double added = -std::norm(k2) * (1.0 - std::norm(2.0 * z - beta)) * gauss;
  double cross = 0.0;
  if (form == SpacWignerForm::kVerbatim) {
    const Complex d = z - beta;
    const double expo = 0.5 * (d * d + std::conj(d) * std::conj(d)).real();
    cross = -(k2 * std::conj(k1) * (2.0 * beta.real() - z) * std::exp(expo)).real();
  } else {
    cross = -2.0 * (std::conj(k1) * k2 * (2.0 * std::conj(z) - std::conj(beta))).real() * gauss;
  }
  return 2.0 * n_sq(beta, k1, k2) / kPi * (coherent + added + cross);
}

double omega_wigner_verbatim(Complex z, double eta, double phi, Complex l1, Complex l2) {
  const double sh = std::sinh(eta);
  const double ch = std::cosh(eta);
  const Complex zt = z * ch - std::conj(z) * std::polar(1.0, phi) * sh;
  const double zt2 = std::norm(zt);
  const double g = std::exp(-2.0 * zt2);
  const double x = z.real();
  const double p = z.imag();
  const double tau = 2.0 * x * x * (ch - sh) * (ch - sh) - 2.0 * p * p * (ch + sh) * (ch + sh);
  const Complex mu{x * (sh - ch), p * (sh + ch)};

  const double f1 = 2.0 / kPi * g;
  const double f2 = 2.0 / kPi * sh * sh * g * (4.0 * zt2 - 1.0);
  const double f3 = 2.0 / kPi * ch * ch * g * (4.0 * zt2 - 1.0);
  const Complex f4 = 4.0 / kPi * mu * sh * std::exp(-tau);
  const Complex f5 = 4.0 / kPi * std::conj(mu) * ch * std::exp(-tau);
  const double f6 = 1.0 / kPi * std::sinh(2.0 * eta) * g * (4.0 * zt2 - 1.0);

  const double c2 = omega_fidelity_sv(eta, phi, l1, l2);  // |chi|^2
  const Complex w = c2 * f1 + std::norm(l1) * c2 * f2 + std::norm(l2) * c2 * f3 -
                    2.0 * c2 * (l1 * std::polar(1.0, phi)).imag() * f4 -
                    2.0 * l2.imag() * c2 * f5 -
                    2.0 * c2 * (std::conj(l1) * l2 * std::polar(1.0, -phi)).real() * f6;
  return w.real();
}

}  // namespace wmstate::closed_form
