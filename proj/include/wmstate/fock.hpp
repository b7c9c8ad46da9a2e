#pragma once

// Dense linear algebra over truncated Fock spaces.
//
// Multi-mode objects use row-major basis ordering over their ordered mode
// list: the first-listed mode is the slowest-varying index. Every function
// here is pure; nothing holds shared mutable state.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wmstate/errors.hpp"

namespace wmstate {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Single bosonic mode truncated to |0>..|cutoff-1>.
class ModeSpace {
 public:
  explicit ModeSpace(int cutoff);

  int cutoff() const { return cutoff_; }

  friend bool operator==(const ModeSpace&, const ModeSpace&) = default;

 private:
  int cutoff_;
};

using ModeList = std::vector<ModeSpace>;

/// Product of the cutoffs in `modes`.
Eigen::Index total_dimension(const ModeList& modes);

class StateVector {
 public:
  StateVector(ModeList modes, CVector amplitudes);
  StateVector(ModeSpace mode, CVector amplitudes);

  const ModeList& modes() const { return modes_; }
  int num_modes() const { return static_cast<int>(modes_.size()); }
  Eigen::Index dimension() const { return amplitudes_.size(); }

  const CVector& amplitudes() const { return amplitudes_; }
  CVector& amplitudes() { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  double norm() const { return amplitudes_.norm(); }
  double squared_norm() const { return amplitudes_.squaredNorm(); }
  /// Throws DegenerateError for the zero vector.
  StateVector normalized() const;

 private:
  ModeList modes_;
  CVector amplitudes_;
};

class Operator {
 public:
  Operator(ModeList modes, CMatrix matrix);
  Operator(ModeSpace mode, CMatrix matrix);

  const ModeList& modes() const { return modes_; }
  Eigen::Index dimension() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }

  Operator adjoint() const;
  StateVector apply(const StateVector& state) const;

  friend Operator operator*(const Operator& lhs, const Operator& rhs);
  friend Operator operator+(const Operator& lhs, const Operator& rhs);
  friend Operator operator-(const Operator& lhs, const Operator& rhs);
  friend Operator operator*(Complex scale, const Operator& op);

 private:
  ModeList modes_;
  CMatrix matrix_;
};

/// Density matrix over an ordered mode list.
struct DensityMatrix {
  ModeList modes;
  CMatrix matrix;

  double trace() const { return matrix.trace().real(); }
  double purity() const { return (matrix * matrix).trace().real(); }
};

DensityMatrix density_of(const StateVector& state);

// -- Ladder and phase-space operators ----------------------------------------

Operator identity(ModeSpace space);
/// <n-1|a|n> = sqrt(n).
Operator annihilator(ModeSpace space);
Operator creator(ModeSpace space);
Operator number_operator(ModeSpace space);
/// X_phi = (a e^{-i phi} + a^+ e^{i phi}) / sqrt(2); X_0 = q, X_{pi/2} = p.
Operator quadrature(ModeSpace space, double phi);

// -- Truncation guards --------------------------------------------------------

/// ceil(|beta|^2 + 6|beta| + 10).
int coherent_guard(double beta_abs);
/// ceil(10 + 8 sinh^2 eta), rounded up to even.
int squeezed_guard(double eta);

// -- Exponentials -------------------------------------------------------------

struct MatrixExpOptions {
  double tol = 1e-12;
  /// Taylor order used after scaling.
  int order = 18;
  /// Scaling target for the 1-norm of A / 2^s.
  double theta = 0.5;
};

/// Scaling and squaring with a truncated Taylor series of `options.order`.
/// Throws ConvergenceError when the remainder bound, amplified by the
/// squarings, exceeds `options.tol` or when `a` has non-finite entries.
CMatrix matrix_exp(const CMatrix& a, const MatrixExpOptions& options = {});
Operator matrix_exp(const Operator& op, const MatrixExpOptions& options = {});

/// exp(generator) applied to `state` without forming the exponential: the
/// generator is scaled so its 1-norm is <= 1 and each step sums the Taylor
/// series on the vector until the next term is below tol * |v|.
StateVector apply_exponential(const Operator& generator, const StateVector& state,
                              double tol = 1e-14);

/// exp(beta a^+ - beta* a). Requires cutoff >= coherent_guard(|beta|).
Operator displacement(ModeSpace space, Complex beta);

/// S(xi) = exp((xi* a^2 - xi a^+2) / 2), xi = eta e^{i phi}. Satisfies
/// S^+ a S = a cosh(eta) - a^+ e^{i phi} sinh(eta). Requires an even cutoff
/// >= squeezed_guard(eta).
Operator squeeze_op(ModeSpace space, double eta, double phi);

// -- Composition --------------------------------------------------------------

Operator tensor(std::span<const Operator> parts);
StateVector tensor(std::span<const StateVector> parts);
Operator tensor(const Operator& a, const Operator& b);
StateVector tensor(const StateVector& a, const StateVector& b);

/// Partial inner product of `bra` (a ket over the modes `bra_modes` of
/// `state`, conjugated here) against `state`. The result lives on the
/// remaining modes, in their original order, and is not normalized.
StateVector contract_bra(const StateVector& state, const StateVector& bra,
                         std::span<const int> bra_modes);

/// Reduced density matrix on `keep` (sorted ascending in the output).
DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep);

/// Copy of a single-mode state into a space with a different cutoff. Growing
/// pads with zeros; shrinking drops the top amplitudes.
StateVector resize(const StateVector& state, int cutoff);

Complex expectation(const Operator& op, const StateVector& state);
Complex expectation(const Operator& op, const DensityMatrix& rho);
Complex inner_product(const StateVector& bra, const StateVector& ket);

}  // namespace wmstate
