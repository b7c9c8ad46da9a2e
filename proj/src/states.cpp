#include "wmstate/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wmstate {

namespace {

// Closed-form amplitude kernels. The magnitudes are evaluated in log space so
// large cutoffs neither overflow nor lose the tail.

CVector coherent_amplitudes(Complex beta, int cutoff) {
  CVector c = CVector::Zero(cutoff);
  const double r = std::abs(beta);
  if (r == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double theta = std::arg(beta);
  const double log_r = std::log(r);
  for (int n = 0; n < cutoff; ++n) {
    const double log_mag = -0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0);
    c[n] = std::polar(std::exp(log_mag), n * theta);
  }
  return c;
}

CVector squeezed_amplitudes(double eta, double phi, int cutoff) {
  CVector c = CVector::Zero(cutoff);
  if (eta == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double log_t = std::log(std::tanh(eta));
  const double log_cosh = std::log(std::cosh(eta));
  const double step_phase = phi + std::numbers::pi;  // (-e^{i phi})^m
  for (int m = 0; 2 * m < cutoff; ++m) {
    const double log_mag = m * log_t + 0.5 * std::lgamma(2.0 * m + 1.0) - m * std::numbers::ln2 -
                           std::lgamma(m + 1.0) - 0.5 * log_cosh;
    c[2 * m] = std::polar(std::exp(log_mag), m * step_phase);
  }
  return c;
}

// a^+ applied to `src`, with src truncated one level below `cutoff`.
CVector raised(const CVector& src, int cutoff) {
  CVector c = CVector::Zero(cutoff);
  for (int n = 1; n < cutoff; ++n) c[n] = std::sqrt(static_cast<double>(n)) * src[n - 1];
  return c;
}

bool norm_ok(const CVector& c) { return std::abs(1.0 - c.squaredNorm()) <= kNormTolerance; }

void check_norm(const CVector& c, const char* what, int cutoff) {
  if (!norm_ok(c)) {
    throw TruncationError(std::string(what) + ": cutoff " + std::to_string(cutoff) +
                          " leaves |1 - norm^2| = " + std::to_string(std::abs(1.0 - c.squaredNorm())));
  }
}

void check_coherent_guard(Complex beta, ModeSpace space, const char* what) {
  const int need = coherent_guard(std::abs(beta));
  if (space.cutoff() < need) {
    throw TruncationError(std::string(what) + ": |beta| = " + std::to_string(std::abs(beta)) +
                          " needs cutoff >= " + std::to_string(need));
  }
}

void check_squeezed_guard(double eta, ModeSpace space, bool need_even, const char* what) {
  if (!(eta >= 0.0)) throw ParameterError(std::string(what) + ": eta must be >= 0");
  const int need = squeezed_guard(eta);
  if (space.cutoff() < need || (need_even && space.cutoff() % 2 != 0)) {
    throw TruncationError(std::string(what) + ": eta = " + std::to_string(eta) + " needs " +
                          (need_even ? "an even " : "a ") + "cutoff >= " + std::to_string(need));
  }
}

CVector spac_amplitudes(Complex beta, int cutoff) {
  const double r2 = std::norm(beta);
  return raised(coherent_amplitudes(beta, cutoff), cutoff) / std::sqrt(1.0 + r2);
}

CVector spasv_amplitudes(double eta, double phi, int cutoff) {
  return raised(squeezed_amplitudes(eta, phi, cutoff), cutoff) / std::cosh(eta);
}

}  // namespace

const char* to_string(PointerKind kind) {
  switch (kind) {
    case PointerKind::kVacuum: return "vacuum";
    case PointerKind::kCoherent: return "coherent";
    case PointerKind::kSqueezedVacuum: return "squeezed";
  }
  return "unknown";
}

StateVector vacuum(ModeSpace space) { return fock(0, space); }

StateVector fock(int n, ModeSpace space) {
  if (n < 0 || n >= space.cutoff()) {
    throw IndexError("fock: n = " + std::to_string(n) + " outside [0, " +
                     std::to_string(space.cutoff()) + ")");
  }
  CVector c = CVector::Zero(space.cutoff());
  c[n] = 1.0;
  return StateVector(space, std::move(c));
}

StateVector coherent_state(Complex beta, ModeSpace space) {
  check_coherent_guard(beta, space, "coherent_state");
  CVector c = coherent_amplitudes(beta, space.cutoff());
  check_norm(c, "coherent_state", space.cutoff());
  return StateVector(space, std::move(c));
}

StateVector squeezed_vacuum(double eta, double phi, ModeSpace space) {
  check_squeezed_guard(eta, space, true, "squeezed_vacuum");
  CVector c = squeezed_amplitudes(eta, phi, space.cutoff());
  check_norm(c, "squeezed_vacuum", space.cutoff());
  return StateVector(space, std::move(c));
}

StateVector spac(Complex beta, ModeSpace space) {
  check_coherent_guard(beta, space, "spac");
  CVector c = spac_amplitudes(beta, space.cutoff());
  check_norm(c, "spac", space.cutoff());
  return StateVector(space, std::move(c));
}

StateVector spasv(double eta, double phi, ModeSpace space) {
  check_squeezed_guard(eta, space, false, "spasv");
  CVector c = spasv_amplitudes(eta, phi, space.cutoff());
  check_norm(c, "spasv", space.cutoff());
  return StateVector(space, std::move(c));
}

StateVector prepare(const PointerInput& input, ModeSpace space) {
  switch (input.kind) {
    case PointerKind::kVacuum: return vacuum(space);
    case PointerKind::kCoherent: return coherent_state(input.beta, space);
    case PointerKind::kSqueezedVacuum: return squeezed_vacuum(input.eta, input.phi, space);
  }
  throw ParameterError("prepare: unknown pointer kind");
}

int minimal_cutoff(const PointerInput& input) {
  switch (input.kind) {
    case PointerKind::kVacuum: return 2;
    case PointerKind::kCoherent: {
      int n = coherent_guard(std::abs(input.beta));
      while (!norm_ok(coherent_amplitudes(input.beta, n))) ++n;
      return n;
    }
    case PointerKind::kSqueezedVacuum: {
      if (!(input.eta >= 0.0)) throw ParameterError("minimal_cutoff: eta must be >= 0");
      int n = squeezed_guard(input.eta);
      while (!norm_ok(squeezed_amplitudes(input.eta, input.phi, n))) n += 2;
      return n;
    }
  }
  throw ParameterError("minimal_cutoff: unknown pointer kind");
}

int minimal_photon_added_cutoff(const PointerInput& input) {
  switch (input.kind) {
    case PointerKind::kVacuum: return 2;
    case PointerKind::kCoherent: {
      int n = coherent_guard(std::abs(input.beta));
      while (!norm_ok(spac_amplitudes(input.beta, n))) ++n;
      return n;
    }
    case PointerKind::kSqueezedVacuum: {
      if (!(input.eta >= 0.0)) throw ParameterError("minimal_cutoff: eta must be >= 0");
      int n = squeezed_guard(input.eta);
      while (!norm_ok(spasv_amplitudes(input.eta, input.phi, n))) n += 2;
      return n;
    }
  }
  throw ParameterError("minimal_photon_added_cutoff: unknown pointer kind");
}

}  // namespace wmstate
