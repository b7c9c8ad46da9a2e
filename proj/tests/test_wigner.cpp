#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wmstate/metrics.hpp"
#include "wmstate/protocol.hpp"
#include "wmstate/states.hpp"
#include "wmstate/wigner.hpp"

using namespace wmstate;

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

WignerGridSpec small_grid(double half = 3.0, int n = 61) { return {-half, half, -half, half, n, n}; }

double max_deviation(const WignerGrid& a, const WignerGrid& b) {
  return (a.values - b.values).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(WignerSpec, Validation) {
  EXPECT_THROW((WignerGridSpec{1.0, 1.0, -1.0, 1.0, 5, 5}.validate()), RangeError);
  EXPECT_THROW((WignerGridSpec{-1.0, 1.0, -1.0, 1.0, 1, 5}.validate()), RangeError);
  EXPECT_NO_THROW(WignerGridSpec{}.validate());
  const WignerGridSpec g = WignerGridSpec{}.guarded();
  EXPECT_DOUBLE_EQ(g.x_min, -5.5);
  EXPECT_DOUBLE_EQ(g.x_at(1) - g.x_at(0), WignerGridSpec{}.x_at(1) - WignerGridSpec{}.x_at(0));
  EXPECT_DOUBLE_EQ(g.x_at(g.nx - 1), 5.5);
}

TEST(WignerNumeric, OriginValues) {
  EXPECT_NEAR(wigner_at(density_of(vacuum(ModeSpace(4))), 0.0), kTwoOverPi, 1e-15);
  EXPECT_NEAR(wigner_at(density_of(fock(1, ModeSpace(4))), 0.0), -kTwoOverPi, 1e-15);
  EXPECT_NEAR(wigner_at(density_of(fock(1, ModeSpace(4))), 0.0), -0.63662, 1e-5);
}

TEST(WignerNumeric, CoherentPeakAndIntegral) {
  const WignerGrid g = wigner_numeric(coherent_state(1.0, ModeSpace(30)), WignerGridSpec{}.guarded());
  Eigen::Index i = 0, j = 0;
  const double peak = g.values.maxCoeff(&i, &j);
  EXPECT_NEAR(g.spec.x_at(static_cast<int>(i)), 1.0, 1e-12);
  EXPECT_NEAR(g.spec.p_at(static_cast<int>(j)), 0.0, 1e-12);
  EXPECT_NEAR(peak, kTwoOverPi, 1e-12);
  EXPECT_NEAR(g.integral(), 1.0, 1e-3);
}

TEST(WignerNumeric, CoherentMatchesGaussian) {
  const Complex beta{0.7, -0.4};
  const WignerGrid g = wigner_numeric(coherent_state(beta, ModeSpace(30)), small_grid());
  double dev = 0.0;
  for (int i = 0; i < g.spec.nx; ++i) {
    for (int j = 0; j < g.spec.np; ++j) {
      const Complex z{g.spec.x_at(i), g.spec.p_at(j)};
      dev = std::max(dev, std::abs(g.values(i, j) - oracle::coherent_wigner(z, beta)));
    }
  }
  EXPECT_LT(dev, 1e-10);
}

TEST(WignerNumeric, MatchesDisplacedParityOracle) {
  const StateVector s = spac(Complex{0.5, 0.3}, ModeSpace(30));
  const DensityMatrix rho = density_of(s);
  for (Complex z : {Complex{0.0, 0.0}, Complex{0.4, -0.2}, Complex{-1.0, 0.7}, Complex{1.3, 1.1}}) {
    EXPECT_NEAR(wigner_at(rho, z), oracle::displaced_parity(s.amplitudes(), z), 1e-10) << z;
  }
}

TEST(WignerNumeric, SqueezedVacuumVariances) {
  const double eta = 0.5;
  const WignerGrid g = wigner_numeric(squeezed_vacuum(eta, 0.0, ModeSpace(80)), WignerGridSpec{}.guarded());
  EXPECT_NEAR(g.variance_x(), std::exp(-2 * eta) / 4, 1e-6);
  EXPECT_NEAR(g.variance_p(), std::exp(2 * eta) / 4, 1e-4);
  EXPECT_NEAR(g.integral(), 1.0, 1e-3);
  for (int i = 0; i < g.spec.nx; i += 7) {
    for (int j = 0; j < g.spec.np; j += 7) {
      const Complex z{g.spec.x_at(i), g.spec.p_at(j)};
      EXPECT_NEAR(g.values(i, j), oracle::squeezed_wigner_phi0(z, eta), 1e-8);
    }
  }
}

TEST(WignerNumeric, DensityOfMixtureIsAverage) {
  const ModeSpace s(6);
  DensityMatrix mix{{s}, 0.5 * (density_of(fock(0, s)).matrix + density_of(fock(1, s)).matrix)};
  EXPECT_NEAR(wigner_at(mix, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(wigner_at(mix, Complex{0.5, 0.0}), 0.5 * (oracle::coherent_wigner(0.5, 0.0) + oracle::fock1_wigner(0.5)),
              1e-14);
}

TEST(WignerNumeric, RejectsUnnormalizedInput) {
  const StateVector s(ModeSpace(4), CVector::Ones(4));
  EXPECT_THROW(wigner_numeric(s, small_grid()), TruncationError);
}

TEST(WignerNumeric, ThetaNegativityDecays) {
  double last = -1.0;
  for (double beta : {0.0, 1.0, 2.0}) {
    ProtocolParams p;
    p.pointer = PointerInput::coherent(beta);
    const double mn = wigner_numeric(conditional_state_first_order(p).state).min();
    EXPECT_GT(mn, last);
    last = mn;
    if (beta == 0.0) EXPECT_LE(mn, -0.636);
    if (beta == 2.0) EXPECT_GE(mn, -0.05);
  }
}

TEST(WignerClosed, CoherentOnlyGrid) {
  const WignerGridSpec spec = small_grid();
  const WignerGrid c = wigner_closed_spac(Complex{1.0, 0.5}, 1.0, 0.0, spec);
  const WignerGrid n = wigner_numeric(coherent_state(Complex{1.0, 0.5}, ModeSpace(30)), spec);
  EXPECT_LT(max_deviation(c, n), 1e-10);
}

TEST(WignerClosed, SinglePhotonGrid) {
  const WignerGridSpec spec = small_grid();
  const WignerGrid c = wigner_closed_spac(0.0, 0.0, 1.0, spec);
  const WignerGrid n = wigner_numeric(fock(1, ModeSpace(4)), spec);
  EXPECT_LT(max_deviation(c, n), 1e-8);
}

TEST(WignerClosed, CorrectedThetaMatchesNumeric) {
  ProtocolParams p;
  p.pointer = PointerInput::coherent(1.0);
  const ConditionalOutput out = conditional_state_first_order(p);
  const WignerGridSpec spec = small_grid();
  const WignerGrid c =
      wigner_closed_spac(1.0, out.coefficient1, out.coefficient2, spec, closed_form::SpacWignerForm::kCorrected);
  EXPECT_LT(max_deviation(c, wigner_numeric(out.state, spec)), 1e-8);
}

TEST(WignerClosed, SqueezedGaussianIsPositive) {
  const WignerGrid g = wigner_closed_spasv(1.0, 0.0, 0.0, 0.0, small_grid());
  EXPECT_GT(g.min(), 0.0);
}

TEST(WignerClosed, SinglePhotonLimitOfOmega) {
  const WignerGridSpec spec = small_grid();
  const WignerGrid c = wigner_closed_spasv(0.0, 0.0, 0.0, 1e4, spec);
  EXPECT_LT(max_deviation(c, wigner_numeric(fock(1, ModeSpace(4)), spec)), 1e-6);
}

TEST(WignerNumeric, OmegaKeepsNegativityAndSqueezing) {
  ProtocolParams p;
  p.pointer = PointerInput::squeezed(1.0);
  const ConditionalOutput out = conditional_state_first_order(p);
  // p is anti-squeezed (Var_W(p) about 5.5 at eta = 1); the box must hold its tails.
  const WignerGrid g = wigner_numeric(out.state, WignerGridSpec{-4, 4, -14, 14, 161, 561});
  EXPECT_LT(g.min(), 0.0);
  // 2 Var_W(x) is Var(q); squeezed below the vacuum's 1/2.
  EXPECT_LT(2.0 * g.variance_x(), 0.5);
  EXPECT_NEAR(2.0 * g.variance_x(), squeezing(out.state, 0.0) + 0.5, 1e-4);
}
