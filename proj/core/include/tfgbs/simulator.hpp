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
#ifndef TFGBS_SIMULATOR_HPP_
#define TFGBS_SIMULATOR_HPP_

#include <vector>

#include "tfgbs/experiment.hpp"
#include "tfgbs/gaussian_state.hpp"

namespace tfgbs {

enum class Conditioning {
  kTraceOut,        // modes outside the pattern are traced out
  kDarkPostSelect,  // the other 8 physical modes must stay dark
};

enum class ThermalInjection {
  kSourceNoise,    // additive k|xi| noise at the source, then pure loss
  kLumpedChannel,  // one thermal-loss channel (eta, k|xi|) per mode
};

enum class SourceState { kSqueezed, kThermal, kCoherent };

struct GaussianPipelineOptions {
  double dilation_epsilon = 1e-3;
  Conditioning conditioning = Conditioning::kTraceOut;
  ThermalInjection thermal = ThermalInjection::kSourceNoise;
  SourceState source = SourceState::kSqueezed;
  double coherent_phase = 0.0;
};

// Mode layout of the 24-mode pipeline.
inline constexpr int kPhysicalModes = 12;
inline constexpr int kPipelineModes = 24;
inline constexpr int kIdlerOffset = 6;

double db_to_transmissivity(double db);

// Sources, noise and loss on 24 modes, before the interferometer.
GaussianState pipeline_input_state(const ExperimentConfig& config,
                                   const GaussianPipelineOptions& options);
// T_s (+) T_i in the canonical gauge.
CMatrix pipeline_transfer_matrix(const ExperimentConfig& config);
GaussianState pipeline_output_state(const ExperimentConfig& config,
                                    const GaussianPipelineOptions& options);

Distribution gbs_distribution_gaussian(
    const ExperimentConfig& config, const GaussianPipelineOptions& options = {});

struct GbsPipelineReport {
  ExperimentConfig config;
  Distribution distribution_gaussian;
  Distribution distribution_permanent;
  double fidelity = 0.0;
};

std::vector<GbsPipelineReport> compare_permanent_vs_gaussian(
    const std::vector<ExperimentConfig>& configs,
    const GaussianPipelineOptions& options = {}, int threads = 0);

enum class HomReference {
  kHalfLoss,  // non-interfering pair with the final beamsplitter as 50% loss
  kDirect,    // non-interfering pair without the extra loss
};

struct HomSimConfig {
  double xi_abs = 0.17;
  double loss_db_signal = 15.0;
  double loss_db_idler = 10.0;
  double thermal_coeff = 0.1;
  ThermalInjection thermal = ThermalInjection::kSourceNoise;
  HomReference reference = HomReference::kHalfLoss;
  bool swap_arms = false;
};

struct HomResult {
  double visibility = 0.0;
  double n0 = 0.0;
  double n_td = 0.0;
};

HomResult hom_simulate(const HomSimConfig& config);
double hom_visibility(const HomSimConfig& config);

struct HomDataPoint {
  double delta_tau = 0.0;
  double counts = 0.0;
};

struct HomFitParams {
  double b = 0.0;
  double v = 0.0;
  double tau_c = 0.0;
};

struct HomFitResult {
  HomFitParams params;
  HomFitParams std_errors;
  double residual_norm = 0.0;
  int iterations = 0;
};

double hom_model(const HomFitParams& p, double delta_tau);

// Levenberg-Marquardt fit of C = B (1 - V exp(-|dtau| / tau_c)).
HomFitResult fit_hom_dip(const std::vector<HomDataPoint>& data,
                         const HomFitParams& initial,
                         int max_iterations = 500);

}  // namespace tfgbs

#endif  // TFGBS_SIMULATOR_HPP_
