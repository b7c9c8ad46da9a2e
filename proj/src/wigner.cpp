#include "wmstate/wigner.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace wmstate {

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

// Off-diagonal bands P^L_k = (-1)^k rho(k, k+L) together with the
// coefficients of the normalized Laguerre recurrence for each L. Bands that
// vanish identically (parity eigenstates) are dropped.
struct Band {
  int order = 0;
  double log_norm = 0.0;  // -log(L!)/2
  std::vector<double> re, im;
  std::vector<double> diag;  // 2k + 1 + L
  std::vector<double> lag;   // sqrt(k (k + L))
  std::vector<double> inv;   // 1 / sqrt((k + 1)(k + 1 + L))
};

std::vector<Band> bands_of(const CMatrix& rho) {
  std::vector<Band> out;
  const int dim = static_cast<int>(rho.rows());
  for (int l = 0; l < dim; ++l) {
    Band b;
    b.order = l;
    const int len = dim - l;
    b.re.resize(len);
    b.im.resize(len);
    bool any = false;
    for (int k = 0; k < len; ++k) {
      const Complex v = (k % 2 == 0 ? 1.0 : -1.0) * rho(k, k + l);
      b.re[k] = v.real();
      b.im[k] = v.imag();
      any = any || v != Complex{};
    }
    if (!any) continue;
    const double dl = l;
    b.log_norm = -0.5 * std::lgamma(dl + 1.0);
    b.diag.resize(len);
    b.lag.resize(len);
    b.inv.resize(len);
    for (int k = 0; k < len; ++k) {
      const double dk = k;
      b.diag[k] = 2.0 * dk + 1.0 + dl;
      b.lag[k] = std::sqrt(dk * (dk + dl));
      b.inv[k] = 1.0 / std::sqrt((dk + 1.0) * (dk + 1.0 + dl));
    }
    out.push_back(std::move(b));
  }
  return out;
}

// W at a batch of points. The recurrence runs over k for all points at
// once so the innermost loop is over independent points.
void evaluate_batch(const std::vector<Band>& bands, const std::vector<Complex>& zs,
                    std::vector<double>& out) {
  const std::size_t n = zs.size();
  std::vector<double> x(n), theta(n), log_r(n), prev(n), cur(n), sum_re(n), sum_im(n);
  std::vector<char> origin(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex gamma = 2.0 * zs[j];
    const double r = std::abs(gamma);
    x[j] = r * r;
    theta[j] = std::arg(gamma);
    origin[j] = r == 0.0;
    log_r[j] = r > 0.0 ? std::log(r) : 0.0;
  }
  out.assign(n, 0.0);
  for (const Band& b : bands) {
    const int l = b.order;
    for (std::size_t j = 0; j < n; ++j) {
      const double f0 =
          origin[j] ? (l == 0 ? 1.0 : 0.0) : std::exp(l * log_r[j] - 0.5 * x[j] + b.log_norm);
      prev[j] = 0.0;
      cur[j] = f0;
      sum_re[j] = f0 * b.re[0];
      sum_im[j] = f0 * b.im[0];
    }
    const int len = static_cast<int>(b.re.size());
    for (int k = 0; k + 1 < len; ++k) {
      const double d = b.diag[k];
      const double g = b.lag[k];
      const double s = b.inv[k];
      const double pr = b.re[k + 1];
      const double pi = b.im[k + 1];
      for (std::size_t j = 0; j < n; ++j) {
        const double next = ((d - x[j]) * cur[j] - g * prev[j]) * s;
        prev[j] = cur[j];
        cur[j] = next;
        sum_re[j] += next * pr;
        sum_im[j] += next * pi;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (l == 0) {
        out[j] += sum_re[j];
      } else {
        out[j] += 2.0 * (std::cos(l * theta[j]) * sum_re[j] - std::sin(l * theta[j]) * sum_im[j]);
      }
    }
  }
  for (double& w : out) w *= kTwoOverPi;
}

double evaluate(const std::vector<Band>& bands, Complex z) {
  std::vector<double> out;
  evaluate_batch(bands, {z}, out);
  return out[0];
}

void require_normalized(double trace, const char* what) {
  if (std::abs(1.0 - trace) > 1e-8) {
    throw TruncationError(std::string(what) + ": input not normalized (trace " +
                          std::to_string(trace) + ")");
  }
}

WignerGrid tabulate_numeric(const WignerGridSpec& spec, const std::vector<Band>& bands) {
  spec.validate();
  WignerGrid grid{spec, Eigen::MatrixXd(spec.nx, spec.np)};
  std::vector<Complex> zs(spec.np);
  std::vector<double> row;
  for (int i = 0; i < spec.nx; ++i) {
    for (int j = 0; j < spec.np; ++j) zs[j] = Complex{spec.x_at(i), spec.p_at(j)};
    evaluate_batch(bands, zs, row);
    for (int j = 0; j < spec.np; ++j) grid.values(i, j) = row[j];
  }
  return grid;
}

template <typename F>
WignerGrid tabulate(const WignerGridSpec& spec, F&& w) {
  spec.validate();
  WignerGrid grid{spec, Eigen::MatrixXd(spec.nx, spec.np)};
  for (int i = 0; i < spec.nx; ++i) {
    for (int j = 0; j < spec.np; ++j) grid.values(i, j) = w(Complex{spec.x_at(i), spec.p_at(j)});
  }
  return grid;
}

// Trapezoidal weights along one axis.
Eigen::VectorXd trapezoid(int n, double lo, double hi) {
  const double h = (hi - lo) / (n - 1);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, h);
  w[0] = w[n - 1] = 0.5 * h;
  return w;
}

Eigen::VectorXd axis(int n, double lo, double hi) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

void WignerGridSpec::validate() const {
  if (!(x_min < x_max) || !(p_min < p_max)) throw RangeError("wigner grid: empty range");
  if (nx < 2 || np < 2) throw RangeError("wigner grid: need at least 2 points per axis");
}

WignerGridSpec WignerGridSpec::guarded(double band) const {
  validate();
  const double hx = (x_max - x_min) / (nx - 1);
  const double hp = (p_max - p_min) / (np - 1);
  const int ex = static_cast<int>(std::ceil(band / hx - 1e-9));
  const int ep = static_cast<int>(std::ceil(band / hp - 1e-9));
  return {x_min - ex * hx, x_max + ex * hx, p_min - ep * hp, p_max + ep * hp, nx + 2 * ex,
          np + 2 * ep};
}

double WignerGrid::integral() const {
  const Eigen::VectorXd wx = trapezoid(spec.nx, spec.x_min, spec.x_max);
  const Eigen::VectorXd wp = trapezoid(spec.np, spec.p_min, spec.p_max);
  return wx.dot(values * wp);
}

double WignerGrid::variance_x() const {
  const Eigen::VectorXd wx = trapezoid(spec.nx, spec.x_min, spec.x_max);
  const Eigen::VectorXd wp = trapezoid(spec.np, spec.p_min, spec.p_max);
  const Eigen::VectorXd xs = axis(spec.nx, spec.x_min, spec.x_max);
  const Eigen::VectorXd marginal = (values * wp).cwiseProduct(wx);
  const double norm = marginal.sum();
  const double m1 = marginal.dot(xs) / norm;
  const double m2 = marginal.dot(xs.cwiseProduct(xs)) / norm;
  return m2 - m1 * m1;
}

double WignerGrid::variance_p() const {
  const Eigen::VectorXd wx = trapezoid(spec.nx, spec.x_min, spec.x_max);
  const Eigen::VectorXd wp = trapezoid(spec.np, spec.p_min, spec.p_max);
  const Eigen::VectorXd ps = axis(spec.np, spec.p_min, spec.p_max);
  const Eigen::VectorXd marginal = (values.transpose() * wx).cwiseProduct(wp);
  const double norm = marginal.sum();
  const double m1 = marginal.dot(ps) / norm;
  const double m2 = marginal.dot(ps.cwiseProduct(ps)) / norm;
  return m2 - m1 * m1;
}

WignerGrid wigner_numeric(const StateVector& state, const WignerGridSpec& spec) {
  if (state.num_modes() != 1) throw ModeMismatchError("wigner_numeric: single-mode input required");
  require_normalized(state.squared_norm(), "wigner_numeric");
  const auto b = bands_of(state.amplitudes() * state.amplitudes().adjoint());
  return tabulate_numeric(spec, b);
}

WignerGrid wigner_numeric(const DensityMatrix& rho, const WignerGridSpec& spec) {
  if (rho.modes.size() != 1) throw ModeMismatchError("wigner_numeric: single-mode input required");
  require_normalized(rho.trace(), "wigner_numeric");
  const auto b = bands_of(rho.matrix);
  return tabulate_numeric(spec, b);
}

double wigner_at(const DensityMatrix& rho, Complex z) {
  if (rho.modes.size() != 1) throw ModeMismatchError("wigner_at: single-mode input required");
  require_normalized(rho.trace(), "wigner_at");
  return evaluate(bands_of(rho.matrix), z);
}

WignerGrid wigner_closed_spac(Complex beta, Complex kappa1, Complex kappa2,
                              const WignerGridSpec& spec, closed_form::SpacWignerForm form) {
  return tabulate(spec, [&](Complex z) {
    return closed_form::theta_wigner(z, beta, kappa1, kappa2, form);
  });
}

WignerGrid wigner_closed_spasv(double eta, double phi, Complex lambda1, Complex lambda2,
                               const WignerGridSpec& spec) {
  return tabulate(spec, [&](Complex z) {
    return closed_form::omega_wigner_verbatim(z, eta, phi, lambda1, lambda2);
  });
}

}  // namespace wmstate
