#include "wmstate/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wmstate {

namespace {

void require_single_mode(const ModeList& modes, const char* what) {
  if (modes.size() != 1) throw ModeMismatchError(std::string(what) + ": single-mode input required");
}

// Moments <a>, <a^2>, <a^+ a>, <a^+2 a^2> of a single-mode density matrix.
struct LadderMoments {
  Complex a;
  Complex a2;
  double n = 0.0;
  double n2 = 0.0;  // <a^+2 a^2>
};

LadderMoments moments_of(const CMatrix& rho) {
  LadderMoments m;
  const Eigen::Index dim = rho.rows();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double kk = static_cast<double>(k);
    m.n += kk * rho(k, k).real();
    m.n2 += kk * (kk - 1.0) * rho(k, k).real();
    if (k + 1 < dim) m.a += std::sqrt(kk + 1.0) * rho(k + 1, k);
    if (k + 2 < dim) m.a2 += std::sqrt((kk + 1.0) * (kk + 2.0)) * rho(k + 2, k);
  }
  return m;
}

CMatrix density_matrix(const StateVector& s) {
  return s.amplitudes() * s.amplitudes().adjoint();
}

PhotonStats stats_from(const LadderMoments& m) {
  if (!(m.n > 0.0)) throw DegenerateError("photon_stats: <a^+ a> = 0, g2 undefined");
  PhotonStats out;
  out.mean_n = m.n;
  out.g2 = m.n2 / (m.n * m.n);
  out.mandel_q = m.n * (out.g2 - 1.0);
  return out;
}

double squeezing_from(const LadderMoments& m, double phi) {
  // Var(X_phi) = 1/2 + <da^+ da> + Re(e^{-2 i phi} <da^2>)
  const Complex da2 = m.a2 - m.a * m.a;
  const double dn = m.n - std::norm(m.a);
  return dn + (std::polar(1.0, -2.0 * phi) * da2).real();
}

}  // namespace

double fidelity(const StateVector& s1, const StateVector& s2) {
  if (s1.modes() != s2.modes()) {
    throw DimensionMismatchError("fidelity: states live on different mode spaces");
  }
  const double denom = s1.squared_norm() * s2.squared_norm();
  if (!(denom > 0.0)) throw DegenerateError("fidelity: zero vector");
  return std::norm(s1.amplitudes().dot(s2.amplitudes())) / denom;
}

PhotonStats photon_stats(const StateVector& state) {
  require_single_mode(state.modes(), "photon_stats");
  return stats_from(moments_of(density_matrix(state.normalized())));
}

PhotonStats photon_stats(const DensityMatrix& rho) {
  require_single_mode(rho.modes, "photon_stats");
  return stats_from(moments_of(rho.matrix / rho.trace()));
}

double squeezing(const StateVector& state, double phi) {
  require_single_mode(state.modes(), "squeezing");
  return squeezing_from(moments_of(density_matrix(state.normalized())), phi);
}

double squeezing(const DensityMatrix& rho, double phi) {
  require_single_mode(rho.modes, "squeezing");
  return squeezing_from(moments_of(rho.matrix / rho.trace()), phi);
}

SqueezingExtremum min_squeezing(const StateVector& state) {
  require_single_mode(state.modes(), "min_squeezing");
  const LadderMoments m = moments_of(density_matrix(state.normalized()));
  const Complex da2 = m.a2 - m.a * m.a;
  const double phi = 0.5 * std::arg(da2) + 0.5 * std::numbers::pi;
  return {m.n - std::norm(m.a) - std::abs(da2), phi};
}

SnrReport snr_ratio(const ProtocolParams& params, Complex beta, ExpansionPath path) {
  if (params.g == 0.0) throw DegenerateError("snr_ratio: g = 0, both shifts vanish");
  ProtocolParams p = params;
  p.pointer = PointerInput::coherent(beta);

  const ConditionalOutput post = path == ExpansionPath::kExact ? conditional_state_exact(p)
                                                               : conditional_state_first_order(p);
  const NonpostselectedPointer non = nonpostselected_pointer(p, path);

  const ModeSpace space = post.state.modes().front();
  const Operator q = quadrature(space, 0.0);
  const double mean_q = expectation(q, post.state).real();
  const double mean_q2 = expectation(q * q, post.state).real();
  const double q_beta = std::numbers::sqrt2 * beta.real();

  SnrReport r;
  r.p_zeroth = post.p_zeroth;
  r.p_model = post.p_model;
  r.delta_q = mean_q - q_beta;
  r.variance_post = mean_q2 - mean_q * mean_q;
  r.delta_q_prime = non.mean_q - q_beta;
  r.variance_non = non.variance_q();
  if (!(r.variance_post > 0.0) || !(r.variance_non > 0.0)) {
    throw DegenerateError("snr_ratio: vanishing quadrature variance");
  }
  r.r_post_per_sqrtN = std::sqrt(r.p_zeroth) * r.delta_q / std::sqrt(r.variance_post);
  r.r_non_per_sqrtN = r.delta_q_prime / std::sqrt(r.variance_non);
  if (r.r_non_per_sqrtN == 0.0) throw DegenerateError("snr_ratio: nonpostselected shift vanishes");
  r.chi = r.r_post_per_sqrtN / r.r_non_per_sqrtN;
  return r;
}

}  // namespace wmstate
