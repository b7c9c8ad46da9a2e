#pragma once

// Wigner functions on rectangular phase-space grids. The phase-space point
// is z = x + i p in coherent-amplitude units, so W integrates to 1 over
// dx dp, |W| <= 2/pi, and the quadrature q = (a + a^+)/sqrt 2 has variance
// 2 Var_W(x).

#include "wmstate/closed_forms.hpp"
#include "wmstate/fock.hpp"

namespace wmstate {

struct WignerGridSpec {
  double x_min = -4.0;
  double x_max = 4.0;
  double p_min = -4.0;
  double p_max = 4.0;
  int nx = 161;
  int np = 161;

  /// Throws RangeError unless min < max and both sizes are >= 2.
  void validate() const;
  double x_at(int i) const { return x_min + (x_max - x_min) * i / (nx - 1); }
  double p_at(int j) const { return p_min + (p_max - p_min) * j / (np - 1); }
  /// Same spacing, every edge pushed outwards by `band`.
  WignerGridSpec guarded(double band = 1.5) const;
};

struct WignerGrid {
  WignerGridSpec spec;
  /// values(i, j) = W(x_i + i p_j).
  Eigen::MatrixXd values;

  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
  /// Trapezoidal integral over the grid.
  double integral() const;
  /// Var_W(x) and Var_W(p) from trapezoidal moments.
  double variance_x() const;
  double variance_p() const;
};

/// W(z) = (2/pi) Tr[rho D(2z) Pi], evaluated exactly for the truncated
/// state through normalized Laguerre recurrences. Throws TruncationError if
/// the input is not normalized within 1e-8.
WignerGrid wigner_numeric(const StateVector& state, const WignerGridSpec& spec = {});
WignerGrid wigner_numeric(const DensityMatrix& rho, const WignerGridSpec& spec = {});
/// Single point, same method.
double wigner_at(const DensityMatrix& rho, Complex z);

WignerGrid wigner_closed_spac(Complex beta, Complex kappa1, Complex kappa2,
                              const WignerGridSpec& spec = {},
                              closed_form::SpacWignerForm form = closed_form::SpacWignerForm::kVerbatim);

WignerGrid wigner_closed_spasv(double eta, double phi, Complex lambda1, Complex lambda2,
                               const WignerGridSpec& spec = {});

}  // namespace wmstate
