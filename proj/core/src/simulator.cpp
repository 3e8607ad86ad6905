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
#include "tfgbs/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "tfgbs/errors.hpp"
#include "tfgbs/matrix_kernels.hpp"

namespace tfgbs {
namespace {

constexpr int kSignalEarly = 1;
constexpr int kSignalLate = 4;

double fidelity_raw(const std::vector<double>& p, const std::vector<double>& q) {
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) f += std::sqrt(p[i] * q[i]);
  return std::min(f, 1.0);
}

}  // namespace

double db_to_transmissivity(double db) {
  if (!(db >= 0.0)) throw ArgumentError("loss in dB must be non-negative");
  return std::pow(10.0, -db / 10.0);
}

GaussianState pipeline_input_state(const ExperimentConfig& config,
                                   const GaussianPipelineOptions& options) {
  config.validate();
  if (config.xi_abs > 0.6) {
    throw ArgumentError("|xi| above the 0.6 sanity cap");
  }
  const PhaseGauge gauge = canonical_gauge(config);
  const double r = config.xi_abs;
  const cplx xi_e = std::polar(r, gauge.arg_xi_early);
  const cplx xi_l = std::polar(r, gauge.arg_xi_late);
  const int source_modes[4] = {kSignalEarly, kIdlerOffset + kSignalEarly,
                               kSignalLate, kIdlerOffset + kSignalLate};

  GaussianState st = vacuum(kPipelineModes);
  switch (options.source) {
    case SourceState::kSqueezed:
      st = apply_two_mode_squeeze(st, kSignalEarly, kIdlerOffset + kSignalEarly,
                                  xi_e);
      st = apply_two_mode_squeeze(st, kSignalLate, kIdlerOffset + kSignalLate,
                                  xi_l);
      break;
    case SourceState::kThermal: {
      const double nbar = std::sinh(r) * std::sinh(r);
      for (int m : source_modes) st = apply_additive_noise(st, m, nbar);
      break;
    }
    case SourceState::kCoherent: {
      const cplx alpha = std::polar(std::sinh(r), options.coherent_phase);
      for (int m : source_modes) st = apply_displacement(st, m, alpha);
      break;
    }
  }

  const double n_th = config.thermal_mean();
  const double eta_s = db_to_transmissivity(config.loss_db_signal);
  const double eta_i = db_to_transmissivity(config.loss_db_idler);
  for (int m : source_modes) {
    const double eta = m < kIdlerOffset ? eta_s : eta_i;
    if (options.thermal == ThermalInjection::kSourceNoise) {
      if (n_th > 0.0) st = apply_additive_noise(st, m, n_th);
      st = apply_thermal_loss(st, m, {eta, 0.0});
    } else {
      st = apply_thermal_loss(st, m, {eta, n_th});
    }
  }
  return st;
}

CMatrix pipeline_transfer_matrix(const ExperimentConfig& config) {
  const PhaseGauge gauge = canonical_gauge(config);
  CMatrix t = CMatrix::Zero(kPhysicalModes, kPhysicalModes);
  t.topLeftCorner(kModesPerSpecies, kModesPerSpecies) =
      transfer_matrix(config, Species::kSignal, gauge.theta_signal);
  t.bottomRightCorner(kModesPerSpecies, kModesPerSpecies) =
      transfer_matrix(config, Species::kIdler, gauge.theta_idler);
  return t;
}

GaussianState pipeline_output_state(const ExperimentConfig& config,
                                    const GaussianPipelineOptions& options) {
  const GaussianState in = pipeline_input_state(config, options);
  const DilationResult dil =
      unitary_dilation(pipeline_transfer_matrix(config), options.dilation_epsilon);
  return apply_interferometer(in, dil.u_prime);
}

Distribution gbs_distribution_gaussian(const ExperimentConfig& config,
                                       const GaussianPipelineOptions& options) {
  if (config.xi_abs == 0.0) throw NumericError("no four-photon signal");
  const GaussianState out = pipeline_output_state(config, options);
  Distribution d;
  d.patterns = enumerate_patterns();
  d.probs.resize(d.patterns.size());
  double total = 0.0;
  for (std::size_t k = 0; k < d.patterns.size(); ++k) {
    const Pattern& p = d.patterns[k];
    const IndexSet clicked = {p.signal[0], p.signal[1],
                              kIdlerOffset + p.idler[0],
                              kIdlerOffset + p.idler[1]};
    IndexSet dark;
    if (options.conditioning == Conditioning::kDarkPostSelect) {
      for (int m = 0; m < kPhysicalModes; ++m) {
        if (std::find(clicked.begin(), clicked.end(), m) == clicked.end()) {
          dark.push_back(m);
        }
      }
    }
    d.probs[k] = threshold_click_probability(out, clicked, dark);
    total += d.probs[k];
  }
  if (!(total > 0.0)) throw NumericError("no four-photon signal");
  for (double& v : d.probs) v /= total;
  return d;
}

std::vector<GbsPipelineReport> compare_permanent_vs_gaussian(
    const std::vector<ExperimentConfig>& configs,
    const GaussianPipelineOptions& options, int threads) {
  std::vector<GbsPipelineReport> out(configs.size());
  auto work = [&](std::size_t i) {
    GbsPipelineReport& r = out[i];
    r.config = configs[i];
    r.distribution_permanent = full_distribution(configs[i]);
    r.distribution_gaussian = gbs_distribution_gaussian(configs[i], options);
    r.fidelity = fidelity_raw(r.distribution_permanent.probs,
                              r.distribution_gaussian.probs);
  };
  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, static_cast<int>(std::max<std::size_t>(configs.size(), 1)));
  if (n_threads == 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) work(i);
    return out;
  }
  // Each worker owns a fixed stride of indices, so results do not depend on
  // scheduling.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < configs.size(); i += n_threads) work(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace tfgbs
