// Copyright 2026 The tfgbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles/combinatorial_oracles.hpp"
#include "oracles/fock_oracle.hpp"
#include "tfgbs/errors.hpp"
#include "tfgbs/gaussian_state.hpp"
#include "tfgbs/matrix_kernels.hpp"

namespace tfgbs {
namespace {

double db(double v) { return std::pow(10.0, -v / 10.0); }

void expect_state_eq(const GaussianState& a, const GaussianState& b, double tol) {
  ASSERT_EQ(a.n_modes, b.n_modes);
  EXPECT_LE((a.sigma - b.sigma).cwiseAbs().maxCoeff(), tol);
  EXPECT_LE((a.disp - b.disp).cwiseAbs().maxCoeff(), tol);
}

TEST(Vacuum, SingleModeCovarianceIsHalfIdentity) {
  const GaussianState v = vacuum(1);
  EXPECT_EQ(v.sigma, 0.5 * CMatrix::Identity(2, 2));
  EXPECT_EQ(v.disp, CVector::Zero(2));
}

TEST(Vacuum, TwelveModeQDeterminantIsOne) {
  EXPECT_NEAR(vacuum(12).q_covariance().determinant().real(), 1.0, 1e-15);
}

TEST(Vacuum, IdentityInterferometerLeavesStateUnchanged) {
  const GaussianState v = vacuum(2);
  expect_state_eq(apply_interferometer(v, CMatrix::Identity(2, 2)), v, 0.0);
}

TEST(Vacuum, RejectsZeroModes) { EXPECT_THROW(vacuum(0), ArgumentError); }

TEST(TwoModeSqueeze, ZeroSqueezingIsIdentity) {
  const GaussianState v = vacuum(3);
  expect_state_eq(apply_two_mode_squeeze(v, 0, 2, 0.0), v, 0.0);
}

TEST(TwoModeSqueeze, MeanPhotonsMatchSinhSquared) {
  const GaussianState s = apply_two_mode_squeeze(vacuum(2), 0, 1, 0.3);
  const RVector n = mean_photon_numbers(s);
  EXPECT_NEAR(n(0), std::pow(std::sinh(0.3), 2), 1e-15);
  EXPECT_NEAR(n(1), std::pow(std::sinh(0.3), 2), 1e-15);
  EXPECT_NEAR(n(0), 0.0927, 1e-4);
}

TEST(TwoModeSqueeze, PairVacuumProbabilityMatchesFockExpansion) {
  const cplx xi = std::polar(0.3, 0.7);
  const GaussianState s = apply_two_mode_squeeze(vacuum(2), 0, 1, xi);
  const auto fock = oracle::FockBuilder(2, 30).two_mode_squeezed(0, 1, xi).build();
  const double p0_fock = fock.click_probability({0, 1}, {false, false});
  EXPECT_NEAR(vacuum_probability(s, {0, 1}), p0_fock, 1e-12);
  EXPECT_NEAR(vacuum_probability(s, {0, 1}), 1.0 / std::pow(std::cosh(0.3), 2),
              1e-14);
  EXPECT_NEAR(vacuum_probability(s, {0, 1}), 0.9151, 1e-4);
}

TEST(TwoModeSqueeze, RejectsEqualModes) {
  EXPECT_THROW(apply_two_mode_squeeze(vacuum(2), 1, 1, 0.1), ArgumentError);
}

TEST(TwoModeSqueeze, TwoPairsGiveCoshMinusFourNormalization) {
  GaussianState s = vacuum(4);
  s = apply_two_mode_squeeze(s, 0, 1, 0.3);
  s = apply_two_mode_squeeze(s, 2, 3, std::polar(0.3, 1.1));
  EXPECT_NEAR(vacuum_probability(s, {0, 1, 2, 3}), std::pow(std::cosh(0.3), -4),
              1e-14);
  const auto fock = oracle::FockBuilder(4, 14)
                        .two_mode_squeezed(0, 1, 0.3)
                        .two_mode_squeezed(2, 3, std::polar(0.3, 1.1))
                        .build();
  EXPECT_NEAR(fock.click_probability({0, 1, 2, 3}, {false, false, false, false}),
              std::pow(std::cosh(0.3), -4), 1e-9);
}

TEST(Interferometer, BalancedSplitterEqualizesSinglyPopulatedInput) {
  GaussianState s = vacuum(3);
  s = apply_two_mode_squeeze(s, 0, 2, 0.4);
  s = apply_interferometer(
      s, givens_rotation(3, 0, 1, std::acos(-1.0) / 4.0, 0.0));
  const RVector n = mean_photon_numbers(s);
  EXPECT_NEAR(n(0), n(1), 1e-15);
}

TEST(Interferometer, ConservesTotalPhotonNumber) {
  std::mt19937_64 rng(11);
  GaussianState s = vacuum(6);
  s = apply_two_mode_squeeze(s, 0, 3, std::polar(0.4, 0.2));
  s = apply_two_mode_squeeze(s, 1, 5, std::polar(0.2, -1.0));
  s = apply_displacement(s, 2, cplx(0.3, -0.1));
  s = apply_thermal_loss(s, 4, {0.5, 0.3});
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix u = oracle::random_unitary(6, rng);
    const GaussianState t = apply_interferometer(s, u);
    EXPECT_NEAR(mean_photon_numbers(t).sum(), mean_photon_numbers(s).sum(), 1e-12);
  }
}

TEST(Interferometer, RejectsNonUnitary) {
  CMatrix u = CMatrix::Identity(2, 2);
  u(0, 1) = 0.1;
  try {
    apply_interferometer(vacuum(2), u);
    FAIL() << "expected ArgumentError";
  } catch (const ArgumentError& e) {
    EXPECT_NE(std::string(e.what()).find("deviation"), std::string::npos);
  }
}

TEST(ThermalLoss, UnitTransmissionIsBitIdentical) {
  GaussianState s = apply_two_mode_squeeze(vacuum(2), 0, 1, std::polar(0.3, 0.4));
  s = apply_displacement(s, 0, cplx(0.1, 0.2));
  const GaussianState t = apply_thermal_loss(s, 0, {1.0, 0.0});
  EXPECT_EQ(t.sigma, s.sigma);
  EXPECT_EQ(t.disp, s.disp);
}

TEST(ThermalLoss, FullLossProducesVacuum) {
  GaussianState s = apply_two_mode_squeeze(vacuum(2), 0, 1, 0.5);
  s = apply_displacement(s, 0, cplx(0.7, 0.0));
  const GaussianState t = reduce(apply_thermal_loss(s, 0, {0.0, 0.0}), {0});
  expect_state_eq(t, vacuum(1), 1e-15);
}

TEST(ThermalLoss, VacuumAcquiresAttenuatedThermalPhotons) {
  const GaussianState s = apply_thermal_loss(vacuum(1), 0, {0.5, 0.017});
  EXPECT_NEAR(mean_photon_numbers(s)(0), 0.0085, 1e-15);
  auto fock = oracle::FockBuilder(1, 20).build();
  fock = oracle::apply_thermal_loss_dilated(fock, 0, 0.5, 0.017);
  EXPECT_NEAR(fock.mean_photons(0), 0.0085, 1e-12);
}

TEST(ThermalLoss, AgreesWithDilatedFockChannelOnSqueezedInput) {
  const cplx xi = std::polar(0.3, 0.5);
  GaussianState g = apply_two_mode_squeeze(vacuum(2), 0, 1, xi);
  g = apply_thermal_loss(g, 0, {0.6, 0.2});
  auto f = oracle::FockBuilder(2, 14).two_mode_squeezed(0, 1, xi).build();
  f = oracle::apply_thermal_loss_dilated(f, 0, 0.6, 0.2);
  for (int mask = 0; mask < 4; ++mask) {
    const std::vector<bool> c = {(mask & 1) != 0, (mask & 2) != 0};
    IndexSet clicked, dark;
    for (int m = 0; m < 2; ++m) (c[m] ? clicked : dark).push_back(m);
    EXPECT_NEAR(threshold_click_probability(g, clicked, dark),
                f.click_probability({0, 1}, c), 1e-7);
  }
}

TEST(ThermalLoss, RejectsTransmissivityOutsideUnitInterval) {
  EXPECT_THROW(apply_thermal_loss(vacuum(1), 0, {1.5, 0.0}), ArgumentError);
  EXPECT_THROW(apply_thermal_loss(vacuum(1), 0, {-0.1, 0.0}), ArgumentError);
}

TEST(ThermalLoss, ChannelsCompose) {
  GaussianState s = apply_two_mode_squeeze(vacuum(2), 0, 1, std::polar(0.35, 0.3));
  s = apply_displacement(s, 0, cplx(0.2, -0.4));
  const GaussianState a =
      apply_thermal_loss(apply_thermal_loss(s, 0, {0.7, 0.0}), 0, {0.4, 0.0});
  const GaussianState b = apply_thermal_loss(s, 0, {0.28, 0.0});
  expect_state_eq(a, b, 1e-12);
}

TEST(Reduce, KeepAllIsIdentity) {
  const GaussianState s = apply_two_mode_squeeze(vacuum(3), 0, 2, 0.2);
  expect_state_eq(reduce(s, {0, 1, 2}), s, 0.0);
}

TEST(Reduce, ProductStateFactorizes) {
  GaussianState s = vacuum(2);
  s = apply_additive_noise(s, 1, 0.7);
  GaussianState th = apply_additive_noise(vacuum(1), 0, 0.7);
  expect_state_eq(reduce(s, {1}), th, 0.0);
}

TEST(Reduce, OneArmOfTmsIsThermal) {
  const GaussianState s = apply_two_mode_squeeze(vacuum(2), 0, 1, 0.3);
  const GaussianState r = reduce(s, {1});
  const double nbar = std::pow(std::sinh(0.3), 2);
  expect_state_eq(r, apply_additive_noise(vacuum(1), 0, nbar), 1e-15);
  const auto fock = oracle::FockBuilder(2, 30).two_mode_squeezed(0, 1, 0.3).build();
  EXPECT_NEAR(fock.mean_photons(1), nbar, 1e-12);
  EXPECT_NEAR(threshold_click_probability(r, {0}, {}), nbar / (1 + nbar), 1e-14);
}

TEST(Reduce, RejectsEmptyKeepSet) {
  EXPECT_THROW(reduce(vacuum(2), {}), ArgumentError);
}

TEST(VacuumProbability, VacuumIsOne) {
  EXPECT_DOUBLE_EQ(vacuum_probability(vacuum(4), {0, 2, 3}), 1.0);
}

TEST(VacuumProbability, CoherentStateUsesDisplacement) {
  const GaussianState s = apply_displacement(vacuum(1), 0, cplx(0.6, 0.8));
  EXPECT_NEAR(vacuum_probability(s, {0}), std::exp(-1.0), 1e-15);
}

TEST(ClickProbability, VacuumNeverClicks) {
  EXPECT_DOUBLE_EQ(threshold_click_probability(vacuum(1), {0}, {}), 0.0);
}

TEST(ClickProbability, ThermalModeClicksWithGeometricWeight) {
  for (double nbar : {0.1, 1.0, 3.0}) {
    const GaussianState s = apply_additive_noise(vacuum(1), 0, nbar);
    EXPECT_NEAR(threshold_click_probability(s, {0}, {}), nbar / (1 + nbar), 1e-14);
  }
}

TEST(ClickProbability, RejectsOverlappingSets) {
  EXPECT_THROW(threshold_click_probability(vacuum(2), {0}, {0}), ArgumentError);
}

GaussianState random_state(int modes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GaussianState s = vacuum(modes);
  for (int a = 0; a + 1 < modes; a += 2) {
    s = apply_two_mode_squeeze(s, a, a + 1, std::polar(0.5 * u(rng), 6.0 * u(rng)));
  }
  s = apply_additive_noise(s, 0, 0.3 * u(rng));
  s = apply_displacement(s, modes - 1, cplx(0.5 * u(rng), 0.5 * u(rng)));
  s = apply_interferometer(s, oracle::random_unitary(modes, rng));
  for (int m = 0; m < modes; ++m) s = apply_thermal_loss(s, m, {u(rng), 0.1 * u(rng)});
  return s;
}

TEST(ClickProbability, PatternsSumToOne) {
  std::mt19937_64 rng(5);
  for (int modes = 1; modes <= 4; ++modes) {
    for (int trial = 0; trial < 5; ++trial) {
      const GaussianState s = random_state(modes, rng);
      check_physical(s);
      double total = 0.0;
      for (int mask = 0; mask < (1 << modes); ++mask) {
        IndexSet c, d;
        for (int m = 0; m < modes; ++m) ((mask >> m) & 1 ? c : d).push_back(m);
        total += threshold_click_probability(s, c, d);
      }
      EXPECT_NEAR(total, 1.0, 1e-10);
    }
  }
}

TEST(ClickProbability, MarginalizingOneModeMatchesTraceOut) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const GaussianState s = random_state(4, rng);
    const double joint_click = threshold_click_probability(s, {0, 3}, {1});
    const double joint_dark = threshold_click_probability(s, {0}, {1, 3});
    EXPECT_NEAR(joint_click + joint_dark, threshold_click_probability(s, {0}, {1}),
                1e-10);
  }
}

TEST(PhysicalState, QCovariancePositiveAfterEveryOperation) {
  std::mt19937_64 rng(21);
  GaussianState s = vacuum(4);
  check_physical(s);
  s = apply_two_mode_squeeze(s, 0, 1, std::polar(0.6, 0.3));
  check_physical(s);
  s = apply_interferometer(s, oracle::random_unitary(4, rng));
  check_physical(s);
  s = apply_thermal_loss(s, 2, {0.3, 0.5});
  check_physical(s);
  s = apply_displacement(s, 1, cplx(1.0, 2.0));
  check_physical(s);
  EXPECT_GT(min_q_eigenvalue(s), 1e-12);
}

TEST(MeanPhotons, VacuumIsZero) {
  EXPECT_EQ(mean_photon_numbers(vacuum(3)), RVector::Zero(3));
}

TEST(MeanPhotons, HomOperatingPoint) {
  const GaussianState s = apply_two_mode_squeeze(vacuum(2), 0, 1, 0.17);
  EXPECT_NEAR(mean_photon_numbers(s)(0), 0.0292, 1e-4);
}

// Two TMS pairs, per-mode loss up to 15 dB, a Haar interferometer and more
// loss, against a density-matrix simulation truncated at 12 photons in total.
TEST(FockOracle, ClickPatternsAgreeOnFourModes) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const cplx xi1 = std::polar(0.3, 6.28 * u(rng));
    const cplx xi2 = std::polar(0.1 + 0.2 * u(rng), 6.28 * u(rng));
    const CMatrix un = oracle::random_unitary(4, rng);
    std::array<double, 4> pre{}, post{};
    for (int m = 0; m < 4; ++m) {
      pre[m] = db(15.0 * u(rng));
      post[m] = db(3.0 * u(rng));
    }
    GaussianState g = vacuum(4);
    g = apply_two_mode_squeeze(g, 0, 1, xi1);
    g = apply_two_mode_squeeze(g, 2, 3, xi2);
    auto f = oracle::FockBuilder(4, 12)
                 .two_mode_squeezed(0, 1, xi1)
                 .two_mode_squeezed(2, 3, xi2)
                 .build();
    for (int m = 0; m < 4; ++m) {
      g = apply_thermal_loss(g, m, {pre[m], 0.0});
      oracle::apply_pure_loss(f, m, pre[m]);
    }
    g = apply_interferometer(g, un);
    oracle::apply_passive_unitary(f, un);
    for (int m = 0; m < 4; ++m) {
      g = apply_thermal_loss(g, m, {post[m], 0.0});
      oracle::apply_pure_loss(f, m, post[m]);
    }
    for (int mask = 0; mask < 16; ++mask) {
      std::vector<bool> c(4);
      IndexSet clicked, dark;
      for (int m = 0; m < 4; ++m) {
        c[m] = (mask >> m) & 1;
        (c[m] ? clicked : dark).push_back(m);
      }
      EXPECT_NEAR(threshold_click_probability(g, clicked, dark),
                  f.click_probability({0, 1, 2, 3}, c), 1e-6)
          << "trial " << trial << " mask " << mask;
    }
  }
}

TEST(FockOracle, ThermalAndCoherentInputsAgree) {
  std::mt19937_64 rng(7);
  const CMatrix un = oracle::random_unitary(3, rng);
  GaussianState g = vacuum(3);
  g = apply_additive_noise(g, 0, 0.2);
  g = apply_displacement(g, 1, cplx(0.3, -0.2));
  auto f = oracle::FockBuilder(3, 16).thermal(0, 0.2).coherent(1, cplx(0.3, -0.2)).build();
  g = apply_interferometer(g, un);
  oracle::apply_passive_unitary(f, un);
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<bool> c(3);
    IndexSet clicked, dark;
    for (int m = 0; m < 3; ++m) {
      c[m] = (mask >> m) & 1;
      (c[m] ? clicked : dark).push_back(m);
    }
    EXPECT_NEAR(threshold_click_probability(g, clicked, dark),
                f.click_probability({0, 1, 2}, c), 1e-8);
  }
}

}  // namespace
}  // namespace tfgbs
