#include "wmstate/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wmstate {

namespace {

std::vector<Eigen::Index> strides_of(const ModeList& modes) {
  std::vector<Eigen::Index> strides(modes.size(), 1);
  for (int k = static_cast<int>(modes.size()) - 2; k >= 0; --k) {
    strides[k] = strides[k + 1] * modes[k + 1].cutoff();
  }
  return strides;
}

void require_same_modes(const ModeList& a, const ModeList& b, const char* what) {
  if (a != b) {
    throw DimensionMismatchError(std::string(what) + ": mode spaces differ");
  }
}

double one_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

ModeSpace::ModeSpace(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 2) {
    throw ParameterError("mode cutoff must be >= 2, got " + std::to_string(cutoff));
  }
}

Eigen::Index total_dimension(const ModeList& modes) {
  Eigen::Index dim = 1;
  for (const auto& m : modes) dim *= m.cutoff();
  return dim;
}

StateVector::StateVector(ModeList modes, CVector amplitudes)
    : modes_(std::move(modes)), amplitudes_(std::move(amplitudes)) {
  if (modes_.empty()) throw ParameterError("state needs at least one mode");
  if (amplitudes_.size() != total_dimension(modes_)) {
    throw DimensionMismatchError("amplitude vector length " + std::to_string(amplitudes_.size()) +
                                 " does not match mode dimension " +
                                 std::to_string(total_dimension(modes_)));
  }
}

StateVector::StateVector(ModeSpace mode, CVector amplitudes)
    : StateVector(ModeList{mode}, std::move(amplitudes)) {}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DegenerateError("cannot normalize the zero vector");
  return StateVector(modes_, amplitudes_ / n);
}

Operator::Operator(ModeList modes, CMatrix matrix)
    : modes_(std::move(modes)), matrix_(std::move(matrix)) {
  const auto dim = total_dimension(modes_);
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw DimensionMismatchError("operator matrix is not " + std::to_string(dim) + "x" +
                                 std::to_string(dim));
  }
}

Operator::Operator(ModeSpace mode, CMatrix matrix) : Operator(ModeList{mode}, std::move(matrix)) {}

Operator Operator::adjoint() const { return Operator(modes_, matrix_.adjoint()); }

StateVector Operator::apply(const StateVector& state) const {
  require_same_modes(modes_, state.modes(), "Operator::apply");
  return StateVector(modes_, matrix_ * state.amplitudes());
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_modes(lhs.modes_, rhs.modes_, "operator product");
  return Operator(lhs.modes_, lhs.matrix_ * rhs.matrix_);
}

Operator operator+(const Operator& lhs, const Operator& rhs) {
  require_same_modes(lhs.modes_, rhs.modes_, "operator sum");
  return Operator(lhs.modes_, lhs.matrix_ + rhs.matrix_);
}

Operator operator-(const Operator& lhs, const Operator& rhs) {
  require_same_modes(lhs.modes_, rhs.modes_, "operator difference");
  return Operator(lhs.modes_, lhs.matrix_ - rhs.matrix_);
}

Operator operator*(Complex scale, const Operator& op) {
  return Operator(op.modes_, scale * op.matrix_);
}

DensityMatrix density_of(const StateVector& state) {
  return {state.modes(), state.amplitudes() * state.amplitudes().adjoint()};
}

Operator identity(ModeSpace space) {
  return Operator(space, CMatrix::Identity(space.cutoff(), space.cutoff()));
}

Operator annihilator(ModeSpace space) {
  const int n = space.cutoff();
  CMatrix a = CMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return Operator(space, std::move(a));
}

Operator creator(ModeSpace space) { return annihilator(space).adjoint(); }

Operator number_operator(ModeSpace space) {
  const int n = space.cutoff();
  CMatrix num = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) num(k, k) = static_cast<double>(k);
  return Operator(space, std::move(num));
}

Operator quadrature(ModeSpace space, double phi) {
  const CMatrix a = annihilator(space).matrix();
  const Complex phase = std::polar(1.0, phi);
  return Operator(space, (a * std::conj(phase) + a.adjoint() * phase) / std::sqrt(2.0));
}

int coherent_guard(double beta_abs) {
  return static_cast<int>(std::ceil(beta_abs * beta_abs + 6.0 * beta_abs + 10.0));
}

int squeezed_guard(double eta) {
  const double s = std::sinh(eta);
  int n = static_cast<int>(std::ceil(10.0 + 8.0 * s * s));
  return n % 2 == 0 ? n : n + 1;
}

CMatrix matrix_exp(const CMatrix& a, const MatrixExpOptions& options) {
  if (a.rows() != a.cols()) throw DimensionMismatchError("matrix_exp needs a square matrix");
  if (!a.allFinite()) throw ConvergenceError("matrix_exp: non-finite entries");
  if (options.order < 1) throw ParameterError("matrix_exp: series order must be >= 1");

  const Eigen::Index n = a.rows();
  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > options.theta) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / options.theta)));
  }
  const double scale = std::ldexp(1.0, -squarings);
  const double x = norm * scale;

  // Lagrange-style tail bound of the Taylor remainder for |B| <= x < m + 2.
  const int m = options.order;
  double remainder = std::exp((m + 1) * std::log(std::max(x, 1e-300)) - std::lgamma(m + 2.0));
  remainder /= (1.0 - x / (m + 2.0));
  if (x == 0.0) remainder = 0.0;
  const double error_bound = std::ldexp(remainder, squarings);
  if (!(error_bound <= options.tol)) {
    throw ConvergenceError("matrix_exp: order " + std::to_string(m) +
                           " cannot reach tol; bound " + std::to_string(error_bound));
  }

  const CMatrix b = a * scale;
  const CMatrix eye = CMatrix::Identity(n, n);
  // Horner: I + B/1 (I + B/2 (... (I + B/m))).
  CMatrix result = eye;
  for (int k = m; k >= 1; --k) {
    result = eye + (b * result) / static_cast<double>(k);
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Operator matrix_exp(const Operator& op, const MatrixExpOptions& options) {
  return Operator(op.modes(), matrix_exp(op.matrix(), options));
}

StateVector apply_exponential(const Operator& generator, const StateVector& state, double tol) {
  require_same_modes(generator.modes(), state.modes(), "apply_exponential");
  const CMatrix& g = generator.matrix();
  if (!g.allFinite()) throw ConvergenceError("apply_exponential: non-finite generator");
  const double norm = one_norm(g);
  const int steps = std::max(1, static_cast<int>(std::ceil(norm)));
  const CMatrix step = g / static_cast<double>(steps);

  constexpr int kMaxTerms = 80;
  CVector v = state.amplitudes();
  for (int s = 0; s < steps; ++s) {
    CVector term = v;
    CVector sum = v;
    bool converged = false;
    for (int k = 1; k <= kMaxTerms; ++k) {
      term = (step * term) / static_cast<double>(k);
      sum += term;
      if (term.norm() <= tol * sum.norm()) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("apply_exponential: Taylor series did not converge");
    v = std::move(sum);
  }
  return StateVector(state.modes(), std::move(v));
}

Operator displacement(ModeSpace space, Complex beta) {
  const int need = coherent_guard(std::abs(beta));
  if (space.cutoff() < need) {
    throw TruncationError("displacement: |beta| = " + std::to_string(std::abs(beta)) +
                          " needs cutoff >= " + std::to_string(need));
  }
  const Operator a = annihilator(space);
  const Operator gen = beta * a.adjoint() - std::conj(beta) * a;
  return matrix_exp(gen);
}

Operator squeeze_op(ModeSpace space, double eta, double phi) {
  if (!(eta >= 0.0)) throw ParameterError("squeeze_op: eta must be >= 0");
  const int need = squeezed_guard(eta);
  if (space.cutoff() % 2 != 0 || space.cutoff() < need) {
    throw TruncationError("squeeze_op: eta = " + std::to_string(eta) +
                          " needs an even cutoff >= " + std::to_string(need));
  }
  const CMatrix a = annihilator(space).matrix();
  const Complex xi = std::polar(eta, phi);
  const CMatrix a2 = a * a;
  const CMatrix gen = (std::conj(xi) * a2 - xi * a2.adjoint()) * 0.5;
  return Operator(space, matrix_exp(gen));
}

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

template <class T>
ModeList concat_modes(const ModeList& a, const T& b) {
  ModeList out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(concat_modes(a.modes(), b.modes()), kron(a.matrix(), b.matrix()));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  return StateVector(concat_modes(a.modes(), b.modes()), kron(a.amplitudes(), b.amplitudes()));
}

Operator tensor(std::span<const Operator> parts) {
  if (parts.empty()) throw ParameterError("tensor: empty operator list");
  Operator out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) out = tensor(out, parts[k]);
  return out;
}

StateVector tensor(std::span<const StateVector> parts) {
  if (parts.empty()) throw ParameterError("tensor: empty state list");
  StateVector out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) out = tensor(out, parts[k]);
  return out;
}

StateVector contract_bra(const StateVector& state, const StateVector& bra,
                         std::span<const int> bra_modes) {
  const ModeList& modes = state.modes();
  const int n_modes = state.num_modes();
  if (static_cast<int>(bra_modes.size()) != bra.num_modes()) {
    throw ModeMismatchError("contract_bra: bra has " + std::to_string(bra.num_modes()) +
                            " modes but " + std::to_string(bra_modes.size()) + " indices given");
  }
  std::vector<int> role(n_modes, -1);  // position in bra, or -1 if kept
  for (std::size_t k = 0; k < bra_modes.size(); ++k) {
    const int m = bra_modes[k];
    if (m < 0 || m >= n_modes || role[m] != -1) {
      throw ModeMismatchError("contract_bra: invalid or repeated mode index " + std::to_string(m));
    }
    if (modes[m] != bra.modes()[k]) {
      throw ModeMismatchError("contract_bra: cutoff mismatch on mode " + std::to_string(m));
    }
    role[m] = static_cast<int>(k);
  }
  ModeList kept;
  for (int m = 0; m < n_modes; ++m) {
    if (role[m] == -1) kept.push_back(modes[m]);
  }
  if (kept.empty()) {
    throw ModeMismatchError("contract_bra: bra covers every mode; use inner_product");
  }

  const auto bra_strides = strides_of(bra.modes());
  const auto kept_strides = strides_of(kept);
  CVector out = CVector::Zero(total_dimension(kept));
  const CVector& amp = state.amplitudes();
  const CVector& bra_amp = bra.amplitudes();

  std::vector<int> digit(n_modes, 0);
  for (Eigen::Index idx = 0; idx < amp.size(); ++idx) {
    Eigen::Index ib = 0;
    Eigen::Index ik = 0;
    int kept_pos = 0;
    for (int m = 0; m < n_modes; ++m) {
      if (role[m] >= 0) {
        ib += digit[m] * bra_strides[role[m]];
      } else {
        ik += digit[m] * kept_strides[kept_pos++];
      }
    }
    out[ik] += std::conj(bra_amp[ib]) * amp[idx];
    for (int m = n_modes - 1; m >= 0; --m) {
      if (++digit[m] < modes[m].cutoff()) break;
      digit[m] = 0;
    }
  }
  return StateVector(std::move(kept), std::move(out));
}

DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep) {
  const ModeList& modes = state.modes();
  const int n_modes = state.num_modes();
  std::vector<bool> is_kept(n_modes, false);
  for (int m : keep) {
    if (m < 0 || m >= n_modes || is_kept[m]) {
      throw ModeMismatchError("partial_trace: invalid or repeated mode index " + std::to_string(m));
    }
    is_kept[m] = true;
  }
  ModeList kept;
  ModeList traced;
  for (int m = 0; m < n_modes; ++m) (is_kept[m] ? kept : traced).push_back(modes[m]);
  if (kept.empty()) throw ModeMismatchError("partial_trace: nothing to keep");

  const auto kept_strides = strides_of(kept);
  const auto traced_strides = traced.empty() ? std::vector<Eigen::Index>{} : strides_of(traced);
  const Eigen::Index kept_dim = total_dimension(kept);
  const Eigen::Index traced_dim = traced.empty() ? 1 : total_dimension(traced);

  // Columns of `block` are the kept-space vectors for each traced basis index.
  CMatrix block = CMatrix::Zero(kept_dim, traced_dim);
  const CVector& amp = state.amplitudes();
  std::vector<int> digit(n_modes, 0);
  for (Eigen::Index idx = 0; idx < amp.size(); ++idx) {
    Eigen::Index ik = 0;
    Eigen::Index it = 0;
    int pk = 0;
    int pt = 0;
    for (int m = 0; m < n_modes; ++m) {
      if (is_kept[m]) {
        ik += digit[m] * kept_strides[pk++];
      } else {
        it += digit[m] * traced_strides[pt++];
      }
    }
    block(ik, it) = amp[idx];
    for (int m = n_modes - 1; m >= 0; --m) {
      if (++digit[m] < modes[m].cutoff()) break;
      digit[m] = 0;
    }
  }
  return {std::move(kept), block * block.adjoint()};
}

StateVector resize(const StateVector& state, int cutoff) {
  if (state.num_modes() != 1) throw ModeMismatchError("resize: single-mode states only");
  const ModeSpace space(cutoff);
  CVector out = CVector::Zero(cutoff);
  const Eigen::Index n = std::min<Eigen::Index>(cutoff, state.dimension());
  out.head(n) = state.amplitudes().head(n);
  return StateVector(space, std::move(out));
}

Complex expectation(const Operator& op, const StateVector& state) {
  require_same_modes(op.modes(), state.modes(), "expectation");
  return state.amplitudes().dot(op.matrix() * state.amplitudes());
}

Complex expectation(const Operator& op, const DensityMatrix& rho) {
  require_same_modes(op.modes(), rho.modes, "expectation");
  return (rho.matrix * op.matrix()).trace();
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  require_same_modes(bra.modes(), ket.modes(), "inner_product");
  return bra.amplitudes().dot(ket.amplitudes());
}

}  // namespace wmstate
