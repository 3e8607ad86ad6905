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
#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "tfgbs/errors.hpp"
#include "tfgbs/experiment.hpp"
#include "tfgbs/matrix_kernels.hpp"

namespace tfgbs {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Relabels frequency bins of every mode in a pattern by per-side maps.
Pattern relabel(const Pattern& p, const std::array<int, 3>& fs,
                const std::array<int, 3>& fi) {
  Pattern out;
  for (int k = 0; k < 2; ++k) {
    out.signal[k] = 3 * (p.signal[k] / 3) + fs[p.signal[k] % 3];
    out.idler[k] = 3 * (p.idler[k] / 3) + fi[p.idler[k] % 3];
  }
  std::sort(out.signal.begin(), out.signal.end());
  std::sort(out.idler.begin(), out.idler.end());
  return out;
}

TEST(ModeIndex, LinearOrderIsEarlyThenLate) {
  const ModeIndex late1 = ModeIndex::from_linear(4, Species::kIdler);
  EXPECT_EQ(late1.time_bin, TimeBin::kLate);
  EXPECT_EQ(late1.freq_bin, 1);
  EXPECT_EQ(late1.species, Species::kIdler);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(ModeIndex::from_linear(i, Species::kSignal).linear(), i);
  }
}

TEST(Patterns, ThereAre144) { EXPECT_EQ(enumerate_patterns().size(), 144u); }

TEST(Patterns, TwelveConfigurationsPerSpecies) {
  std::set<std::array<int, 2>> signal_sides;
  for (const Pattern& p : enumerate_patterns()) signal_sides.insert(p.signal);
  EXPECT_EQ(signal_sides.size(), 12u);
}

TEST(Patterns, NoRepeatedFrequencyOnEitherSide) {
  for (const Pattern& p : enumerate_patterns()) {
    EXPECT_NE(p.signal[0] % 3, p.signal[1] % 3);
    EXPECT_NE(p.idler[0] % 3, p.idler[1] % 3);
    EXPECT_TRUE(p.valid());
  }
}

TEST(Patterns, LexicographicAndIndexable) {
  const auto all = enumerate_patterns();
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  for (int i = 0; i < static_cast<int>(all.size()); ++i) {
    EXPECT_EQ(pattern_index(all[i]), i);
  }
  EXPECT_EQ(pattern_index(Pattern{{0, 3}, {1, 2}}), -1);
}

TEST(Config, BesselAmplitudesAtDefaultModulation) {
  ExperimentConfig c;
  c.equal_bessel = false;
  const auto a = c.bessel_amplitudes();
  EXPECT_NEAR(a[0], 0.5419, 1e-4);
  EXPECT_NEAR(a[1], 0.5669, 1e-4);
  EXPECT_DOUBLE_EQ(a[0], a[2]);
  c.equal_bessel = true;
  const auto b = c.bessel_amplitudes();
  EXPECT_NEAR(b[0] * b[0], (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) / 3.0, 1e-15);
}

TEST(Config, NormalizedWrapsPhases) {
  ExperimentConfig c;
  c.x = 3 * kPi;
  c.delta = -1.5 * kPi;
  const ExperimentConfig n = c.normalized();
  EXPECT_NEAR(n.x, kPi, 1e-12);
  EXPECT_NEAR(n.delta, 0.5 * kPi, 1e-12);
}

TEST(Config, ValidateRejectsNegativeLoss) {
  ExperimentConfig c;
  c.loss_db_signal = -1.0;
  EXPECT_THROW(c.validate(), ArgumentError);
}

TEST(TransferMatrix, ReferenceColumnIsRealInCanonicalGauge) {
  ExperimentConfig c;
  c.x = 0.7;
  c.delta = 0.3;
  const PhaseGauge g = canonical_gauge(c);
  const CMatrix t = transfer_matrix(c, Species::kSignal, g.theta_signal);
  for (int r = 0; r < 6; ++r) EXPECT_EQ(t(r, 1).imag(), 0.0);
}

TEST(TransferMatrix, EqualBesselZeroGaugeColumn) {
  const ExperimentConfig c;
  const double jbar = c.bessel_amplitudes()[0];
  const CMatrix t = transfer_matrix(c, Species::kIdler, {0.0, 0.0, 0.0});
  for (int r = 0; r < 6; ++r) EXPECT_NEAR(std::abs(t(r, 1) - jbar / 2), 0.0, 1e-15);
  for (int r = 3; r < 6; ++r) EXPECT_NEAR(std::abs(t(r, 4) - jbar / 2), 0.0, 1e-15);
}

TEST(TransferMatrix, PopulatedColumnsAreContractions) {
  for (double m : {0.5, 1.4, 2.4}) {
    ExperimentConfig c;
    c.modulation_index = m;
    c.equal_bessel = false;
    const CMatrix t = transfer_matrix(c, Species::kSignal, {0.1, 0.2, 0.3});
    for (int col = 0; col < 6; ++col) EXPECT_LE(t.col(col).norm(), 1.0);
    EXPECT_EQ(t.col(0).norm(), 0.0);
  }
}

TEST(CMatrix, ZeroPhasesGiveTwoInLateLateBlock) {
  ExperimentConfig c;
  c.x = 0.0;
  const CMatrix m = c_matrix(c);
  const double unit = m(0, 0).real();
  EXPECT_NEAR(unit, 0.25 * std::pow(c.bessel_amplitudes()[0], 2) * std::tanh(0.3),
              1e-15);
  for (int q = 3; q < 6; ++q) {
    for (int p = 3; p < 6; ++p) EXPECT_NEAR(std::abs(m(q, p) - 2.0 * unit), 0.0, 1e-15);
  }
  EXPECT_NEAR(std::abs(m(1, 4) - unit), 0.0, 1e-15);
}

TEST(CMatrix, PiPhaseCancelsLateLateBlock) {
  ExperimentConfig c;
  c.x = kPi;
  const CMatrix m = c_matrix(c);
  EXPECT_LE(m.bottomRightCorner(3, 3).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(CMatrix, ZeroTwoEntryIgnoresDelta) {
  ExperimentConfig c;
  c.x = 0.9;
  const CMatrix ref = c_matrix(c);
  for (double d : {-2.0, 0.4, 1.7}) {
    c.delta = d;
    EXPECT_NEAR(std::abs(c_matrix(c)(3, 5)), std::abs(ref(3, 5)), 1e-15);
    EXPECT_NEAR(std::abs(c_matrix(c)(3, 5)) / std::abs(ref(0, 0)),
                std::abs(1.0 + std::polar(1.0, 0.9)), 1e-12);
  }
}

TEST(PatternProbability, SelectsRowsAndColumnsOfPattern) {
  ExperimentConfig c;
  c.x = 0.4;
  c.delta = 0.2;
  c.equal_bessel = false;
  const CMatrix m = c_matrix(c);
  const Pattern s{{0, 4}, {2, 3}};
  const cplx perm = m(0, 2) * m(4, 3) + m(0, 3) * m(4, 2);
  EXPECT_NEAR(pattern_probability(c, s), std::norm(perm) / std::pow(std::cosh(0.3), 4),
              1e-18);
}

TEST(PatternProbability, LateLatePatternVanishesAtPi) {
  ExperimentConfig c;
  c.x = kPi;
  EXPECT_NEAR(pattern_probability(c, Pattern{{3, 4}, {4, 5}}), 0.0, 1e-30);
  EXPECT_GT(pattern_probability(c, Pattern{{0, 1}, {1, 2}}), 0.0);
}

TEST(PatternProbability, RejectsInvalidPattern) {
  EXPECT_THROW(pattern_probability(ExperimentConfig{}, Pattern{{0, 3}, {1, 2}}),
               ArgumentError);
}

TEST(PatternProbability, TwoPhotonCoincidenceIsCouplingSquared) {
  ExperimentConfig c;
  c.x = 1.3;
  c.delta = 0.5;
  const CMatrix m = c_matrix(c);
  for (int q = 0; q < 6; ++q) {
    for (int p = 0; p < 6; ++p) {
      EXPECT_NEAR(coincidence_probability(c, q, p),
                  std::norm(m(q, p)) / std::pow(std::cosh(0.3), 4), 1e-18);
    }
  }
}

TEST(Franson, OffsetsFollowFrequencySum) {
  const double d = 0.37;
  const std::array<std::array<int, 2>, 6> jk = {
      {{0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {2, 2}}};
  const std::array<double, 6> expected = {-2 * d, -d, 0.0, 0.0, d, 2 * d};
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(franson_offset(jk[i][0], jk[i][1], d), expected[i], 1e-15);
  }
}

TEST(Franson, CentralPairsShareAFringe) {
  for (double x = -kPi; x < kPi; x += 0.3) {
    for (double d : {0.0, 0.8, -1.9}) {
      EXPECT_DOUBLE_EQ(franson_probability(1, 1, x, d), franson_probability(0, 2, x, d));
    }
  }
}

TEST(Franson, PeakIsTwo) {
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(franson_probability(j, k, 0.0, 0.0), 2.0);
  }
}

TEST(Franson, LateLateCoincidenceTracksFringe) {
  ExperimentConfig c;
  c.delta = 0.45;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      c.x = 0.0;
      const double scale =
          coincidence_probability(c, 3 + j, 3 + k) / franson_probability(j, k, 0.0, c.delta);
      for (int step = 0; step < 32; ++step) {
        c.x = -kPi + step * 2 * kPi / 32;
        EXPECT_NEAR(coincidence_probability(c, 3 + j, 3 + k),
                    scale * franson_probability(j, k, c.x, c.delta), 1e-15);
      }
    }
  }
}

TEST(Distribution, NormalizedOverPatterns) {
  ExperimentConfig c;
  c.x = 2.1;
  c.delta = -0.6;
  const Distribution d = full_distribution(c);
  EXPECT_EQ(d.patterns.size(), 144u);
  EXPECT_NEAR(d.sum(), 1.0, 1e-12);
  for (double p : d.probs) EXPECT_GE(p, 0.0);
}

TEST(Distribution, FrequencyRelabelingSymmetryAtZeroPhases) {
  ExperimentConfig c;
  c.x = 0.0;
  const Distribution d = full_distribution(c);
  std::array<int, 3> fs = {0, 1, 2};
  do {
    std::array<int, 3> fi = {2, 0, 1};
    for (int i = 0; i < 144; ++i) {
      const int j = pattern_index(relabel(d.patterns[i], fs, fi));
      ASSERT_GE(j, 0);
      EXPECT_NEAR(d.probs[j], d.probs[i], 1e-15);
    }
  } while (std::next_permutation(fs.begin(), fs.end()));
}

TEST(Distribution, MirroringFrequenciesFlipsDelta) {
  for (bool equal : {true, false}) {
    ExperimentConfig a;
    a.x = 0.8;
    a.delta = 0.35;
    a.equal_bessel = equal;
    ExperimentConfig b = a;
    b.delta = -a.delta;
    const Distribution da = full_distribution(a);
    const Distribution db = full_distribution(b);
    for (int i = 0; i < 144; ++i) {
      const int j = pattern_index(relabel(da.patterns[i], {2, 1, 0}, {2, 1, 0}));
      EXPECT_NEAR(db.probs[j], da.probs[i], 1e-15);
    }
  }
}

// Any split of the phase constraints between the two species and the two
// squeezers yields the same probabilities as the closed-form coupling matrix.
TEST(GaugeInvariance, RandomSplitsMatchClosedForm) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    ExperimentConfig c;
    c.x = phase(rng);
    c.delta = phase(rng);
    c.xi_phase = phase(rng);
    c.equal_bessel = (trial % 2 == 0);
    const CMatrix closed = c_matrix(c);
    const CMatrix built = c_matrix_from_transfer(c, make_gauge(c, phase(rng), phase(rng)));
    for (const Pattern& s : enumerate_patterns()) {
      EXPECT_NEAR(pattern_probability(built, c.xi_abs, s),
                  pattern_probability(closed, c.xi_abs, s), 1e-10);
    }
  }
}

TEST(GaugeInvariance, CanonicalGaugeReproducesCouplingExactly) {
  ExperimentConfig c;
  c.x = 1.0;
  c.delta = 0.25;
  const CMatrix built = c_matrix_from_transfer(c, canonical_gauge(c));
  EXPECT_LE((built - c_matrix(c)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(HafnianBridge, BlockFormMatchesPatternPermanent) {
  ExperimentConfig c;
  c.x = 1.0;
  c.delta = 0.2;
  const CMatrix m = c_matrix(c);
  for (const Pattern& s : enumerate_patterns()) {
    CMatrix block = CMatrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        block(a, 2 + b) = m(s.signal[a], s.idler[b]);
        block(2 + b, a) = m(s.signal[a], s.idler[b]);
      }
    }
    CMatrix sub(2, 2);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) sub(a, b) = m(s.signal[a], s.idler[b]);
    }
    EXPECT_NEAR(std::abs(hafnian(block) - permanent(sub)), 0.0, 1e-12);
  }
}

}  // namespace
}  // namespace tfgbs
