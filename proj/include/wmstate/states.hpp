#pragma once

// Closed-form state constructors. Amplitudes come from analytic expressions,
// not from operator exponentials, so they double as oracles for fock.hpp.
// Every constructor enforces the truncation guard and then checks
// |1 - norm^2| <= kNormTolerance, raising TruncationError otherwise.

#include "wmstate/fock.hpp"

namespace wmstate {

inline constexpr double kNormTolerance = 1e-8;

StateVector vacuum(ModeSpace space);
/// Basis vector |n>. Throws IndexError unless 0 <= n < cutoff.
StateVector fock(int n, ModeSpace space);
/// |beta> with c_n = beta^n e^{-|beta|^2/2} / sqrt(n!).
StateVector coherent_state(Complex beta, ModeSpace space);
/// S(xi)|0> with c_{2m} = (-e^{i phi} tanh eta)^m sqrt((2m)!) / (2^m m! sqrt(cosh eta)).
/// Needs an even cutoff.
StateVector squeezed_vacuum(double eta, double phi, ModeSpace space);
/// Single-photon-added coherent state a^+|beta> / sqrt(1 + |beta|^2).
StateVector spac(Complex beta, ModeSpace space);
/// Single-photon-added squeezed vacuum a^+ S(xi)|0> / cosh eta.
StateVector spasv(double eta, double phi, ModeSpace space);

enum class PointerKind { kVacuum, kCoherent, kSqueezedVacuum };

/// Signal (pointer) input. The coherent phase theta lives inside `beta`.
struct PointerInput {
  PointerKind kind = PointerKind::kVacuum;
  Complex beta{0.0, 0.0};
  double eta = 0.0;
  double phi = 0.0;

  static PointerInput vacuum() { return {}; }
  static PointerInput coherent(Complex beta) { return {PointerKind::kCoherent, beta, 0.0, 0.0}; }
  static PointerInput squeezed(double eta, double phi = 0.0) {
    return {PointerKind::kSqueezedVacuum, {0.0, 0.0}, eta, phi};
  }
};

const char* to_string(PointerKind kind);

StateVector prepare(const PointerInput& input, ModeSpace space);

/// Smallest cutoff for which `prepare(input, ...)` passes both guard checks.
int minimal_cutoff(const PointerInput& input);
/// Same for the photon-added counterparts (spac / spasv); vacuum maps to |1>.
int minimal_photon_added_cutoff(const PointerInput& input);

}  // namespace wmstate
