#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "wmstate/closed_forms.hpp"
#include "wmstate/metrics.hpp"
#include "wmstate/states.hpp"

using namespace wmstate;

TEST(Fidelity, Basics) {
  const ModeSpace s(30);
  const StateVector c = coherent_state(Complex{0.4, -0.9}, s);
  EXPECT_NEAR(fidelity(c, c), 1.0, 1e-14);
  EXPECT_EQ(fidelity(fock(0, s), fock(1, s)), 0.0);
  EXPECT_NEAR(fidelity(coherent_state(4.0, ModeSpace(60)), spac(4.0, ModeSpace(60))), 16.0 / 17.0, 1e-10);
  EXPECT_THROW(fidelity(vacuum(ModeSpace(3)), vacuum(ModeSpace(4))), DimensionMismatchError);
}

TEST(Fidelity, IgnoresGlobalPhaseAndScale) {
  const ModeSpace s(30);
  const StateVector c = coherent_state(0.7, s);
  const StateVector d(s, c.amplitudes() * std::polar(3.0, 1.2));
  EXPECT_NEAR(fidelity(c, d), 1.0, 1e-14);
}

TEST(PhotonStats, ThetaAtBetaZero) {
  ProtocolParams p;
  p.pointer = PointerInput::coherent(0.0);
  const ConditionalOutput out = conditional_state_first_order(p);
  const PhotonStats st = photon_stats(out.state);
  EXPECT_EQ(st.g2, 0.0);
  const double k2 = 0.105 / (std::numbers::sqrt2 * 0.01 * 0.1);
  EXPECT_NEAR(st.mandel_q, -k2 * k2 / (1 + k2 * k2), 1e-12);
  EXPECT_NEAR(st.mandel_q, -0.999819, 1e-6);
}

TEST(PhotonStats, MatchesThetaClosedForms) {
  for (double b : {0.3, 1.0, 2.5}) {
    ProtocolParams p;
    p.pointer = PointerInput::coherent(b);
    const ConditionalOutput out = conditional_state_first_order(p);
    const PhotonStats st = photon_stats(out.state);
    const double n = closed_form::theta_mean_n(b, out.coefficient1, out.coefficient2);
    EXPECT_NEAR(st.mean_n, n, 1e-9 * std::max(1.0, n));
  }
}

TEST(PhotonStats, DensityAgreesWithPure) {
  const StateVector s = spac(Complex{0.5, 0.5}, ModeSpace(30));
  const PhotonStats a = photon_stats(s);
  const PhotonStats b = photon_stats(density_of(s));
  EXPECT_NEAR(a.mean_n, b.mean_n, 1e-12);
  EXPECT_NEAR(a.g2, b.g2, 1e-12);
}

TEST(PhotonStats, VacuumIsDegenerate) {
  EXPECT_THROW(photon_stats(vacuum(ModeSpace(5))), DegenerateError);
  EXPECT_THROW(photon_stats(tensor(vacuum(ModeSpace(3)), fock(1, ModeSpace(3)))), ModeMismatchError);
}

TEST(Squeezing, VacuumIsZero) {
  for (double phi : {0.0, 0.7, 2.0}) EXPECT_NEAR(squeezing(vacuum(ModeSpace(6)), phi), 0.0, 1e-15);
}

TEST(Squeezing, SqueezedVacuumQuadratures) {
  const double eta = 1.0;
  const StateVector sv = squeezed_vacuum(eta, 0.0, ModeSpace(64));
  EXPECT_NEAR(squeezing(sv, 0.0), (std::exp(-2 * eta) - 1) / 2, 1e-6);
  EXPECT_NEAR(squeezing(sv, std::numbers::pi / 2), (std::exp(2 * eta) - 1) / 2, 1e-5);
  EXPECT_NEAR(min_squeezing(sv).value, -0.43233, 1e-5);
}

TEST(Squeezing, MinimumBelowEverySampledAngle) {
  const StateVector s = spac(Complex{0.8, 0.3}, ModeSpace(30));
  const SqueezingExtremum m = min_squeezing(s);
  EXPECT_NEAR(squeezing(s, m.phi), m.value, 1e-12);
  for (int k = 0; k < 64; ++k) EXPECT_GE(squeezing(s, k * std::numbers::pi / 64) + 1e-12, m.value);
}

TEST(Squeezing, DensityAgreesWithPure) {
  const StateVector s = spasv(0.6, 0.4, ModeSpace(40));
  EXPECT_NEAR(squeezing(s, 0.3), squeezing(density_of(s), 0.3), 1e-12);
}

TEST(Snr, ZeroCouplingIsDegenerate) {
  ProtocolParams p;
  p.g = 0.0;
  EXPECT_THROW(snr_ratio(p, 1.0), DegenerateError);
}

TEST(Snr, ReportConsistency) {
  const SnrReport r = snr_ratio(ProtocolParams{}, 1.0);
  EXPECT_DOUBLE_EQ(r.chi, r.r_post_per_sqrtN / r.r_non_per_sqrtN);
  EXPECT_EQ(r.p_zeroth, 1e-6);
  EXPECT_GT(r.delta_q, 0.0);
  EXPECT_GT(r.delta_q_prime, 0.0);
  EXPECT_NEAR(r.variance_non, 0.5, 1e-3);
}

TEST(Snr, OrderedInEpsilon) {
  for (double beta : {0.2, 1.0, 2.0}) {
    double last = 0.0;
    for (double eps : {0.05, 0.1, 0.2}) {
      ProtocolParams p;
      p.epsilon = eps;
      const double chi = snr_ratio(p, beta).chi;
      EXPECT_GT(chi, last) << "beta=" << beta << " eps=" << eps;
      last = chi;
    }
  }
}

TEST(Snr, DependsOnlyOnMagnitudeForRealBeta) {
  EXPECT_DOUBLE_EQ(snr_ratio(ProtocolParams{}, Complex{1.3, 0.0}).chi,
                   snr_ratio(ProtocolParams{}, std::polar(1.3, 0.0)).chi);
}

TEST(Snr, MomentsMatchCorrectedClosedForms) {
  ProtocolParams p;
  p.pointer = PointerInput::coherent(1.2);
  const ConditionalOutput out = conditional_state_first_order(p);
  const SnrReport r = snr_ratio(ProtocolParams{}, 1.2);
  const double q = closed_form::theta_mean_q(1.2, out.coefficient1, out.coefficient2);
  const double q2 = closed_form::theta_mean_q2(1.2, out.coefficient1, out.coefficient2);
  EXPECT_NEAR(r.delta_q, q - std::numbers::sqrt2 * 1.2, 1e-8);
  EXPECT_NEAR(r.variance_post, q2 - q * q, 1e-8);
}
