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
#ifndef TFGBS_EXPERIMENT_HPP_
#define TFGBS_EXPERIMENT_HPP_

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "tfgbs/types.hpp"

namespace tfgbs {

inline constexpr int kFreqBins = 3;
inline constexpr int kModesPerSpecies = 6;
inline constexpr int kPatternCount = 144;

enum class TimeBin { kEarly = 0, kLate = 1 };
enum class Species { kSignal = 0, kIdler = 1 };

struct ModeIndex {
  TimeBin time_bin = TimeBin::kEarly;
  int freq_bin = 0;
  Species species = Species::kSignal;

  // 3 * time_bin + freq_bin within the species: {E0, E1, E2, L0, L1, L2}.
  int linear() const;
  static ModeIndex from_linear(int index, Species species);
};

// Two signal and two idler modes, stored as ascending linear indices.
struct Pattern {
  std::array<int, 2> signal{};
  std::array<int, 2> idler{};

  auto operator<=>(const Pattern&) const = default;
  bool valid() const;
  std::string label() const;
};

struct Distribution {
  std::vector<Pattern> patterns;
  std::vector<double> probs;

  double sum() const;
};

struct ExperimentConfig {
  double x = 1.0;
  double delta = 0.0;
  double modulation_index = 1.4;
  // When true all three sideband amplitudes equal the rms value.
  bool equal_bessel = true;
  double xi_abs = 0.3;
  double xi_phase = 0.0;
  double loss_db_signal = 0.0;
  double loss_db_idler = 0.0;
  double thermal_coeff = 0.0;

  // |J_{f-1}(modulation_index)| for f = 0, 1, 2, or three copies of the rms.
  std::array<double, 3> bessel_amplitudes() const;
  double thermal_mean() const { return thermal_coeff * xi_abs; }
  // Copy with x, delta and xi_phase wrapped into (-pi, pi].
  ExperimentConfig normalized() const;
  void validate() const;
};

double wrap_phase(double phi);

// Per-species phases theta_f of the late-input column plus the squeezer
// phases. Physical gauges satisfy
//   theta_s[f] + theta_i[g] + arg_xi_late - arg_xi_early = x + (f + g - 2) delta.
struct PhaseGauge {
  std::array<double, 3> theta_signal{};
  std::array<double, 3> theta_idler{};
  double arg_xi_early = 0.0;
  double arg_xi_late = 0.0;
};

// theta_s[f] = split + (f-1) delta, theta_i[g] = 2 theta_p - split + (g-1) delta,
// arg xi_L = x - 2 theta_p + arg xi_E.
PhaseGauge make_gauge(const ExperimentConfig& config, double theta_p,
                      double split);
// theta_p = split = x / 2.
PhaseGauge canonical_gauge(const ExperimentConfig& config);

std::vector<Pattern> enumerate_patterns();
// Position of p in enumerate_patterns(), or -1.
int pattern_index(const Pattern& p);

// 6 x 6 transfer matrix: column 1 is the early squeezer input, column 4 the
// late one; all other columns are zero.
CMatrix transfer_matrix(const ExperimentConfig& config, Species species,
                        const std::array<double, 3>& theta);

// Closed-form coupling matrix including the tanh|xi| factor.
CMatrix c_matrix(const ExperimentConfig& config);

// C = T_s diag(tanh xi_E, tanh xi_L) T_i^T built from a phase gauge.
CMatrix c_matrix_from_transfer(const ExperimentConfig& config,
                               const PhaseGauge& gauge);

// |perm(C_s)|^2 times the global vacuum probability cosh^-4 |xi|.
double pattern_probability(const ExperimentConfig& config, const Pattern& s);
double pattern_probability(const CMatrix& c, double xi_abs, const Pattern& s);

// Two-photon coincidence: |C_qp|^2 cosh^-4 |xi|.
double coincidence_probability(const ExperimentConfig& config, int signal,
                               int idler);

double franson_offset(int j, int k, double delta);
double franson_probability(int j, int k, double x, double delta);

// Normalized permanent-based distribution over the 144 patterns.
Distribution full_distribution(const ExperimentConfig& config);
Distribution distribution_from_c(const CMatrix& c, double xi_abs);

}  // namespace tfgbs

#endif  // TFGBS_EXPERIMENT_HPP_
