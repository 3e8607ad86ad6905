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
#include "tfgbs/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tfgbs/errors.hpp"
#include "tfgbs/matrix_kernels.hpp"

namespace tfgbs {
namespace {

constexpr int kEarlyInput = 1;
constexpr int kLateInput = 4;

void check_linear(int index) {
  if (index < 0 || index >= kModesPerSpecies) {
    throw ArgumentError("mode index out of range");
  }
}

std::vector<std::array<int, 2>> species_pairs() {
  std::vector<std::array<int, 2>> out;
  for (int a = 0; a < kModesPerSpecies; ++a) {
    for (int b = a + 1; b < kModesPerSpecies; ++b) {
      if (a % kFreqBins != b % kFreqBins) out.push_back({a, b});
    }
  }
  return out;
}

const char* mode_name(int index) {
  static const char* kNames[] = {"E0", "E1", "E2", "L0", "L1", "L2"};
  return kNames[index];
}

}  // namespace

int ModeIndex::linear() const {
  return kFreqBins * static_cast<int>(time_bin) + freq_bin;
}

ModeIndex ModeIndex::from_linear(int index, Species species) {
  check_linear(index);
  ModeIndex m;
  m.time_bin = index < kFreqBins ? TimeBin::kEarly : TimeBin::kLate;
  m.freq_bin = index % kFreqBins;
  m.species = species;
  return m;
}

bool Pattern::valid() const {
  for (const auto& pair : {signal, idler}) {
    if (pair[0] < 0 || pair[1] >= kModesPerSpecies || pair[0] >= pair[1]) {
      return false;
    }
    if (pair[0] % kFreqBins == pair[1] % kFreqBins) return false;
  }
  return true;
}

std::string Pattern::label() const {
  std::ostringstream out;
  out << "s" << mode_name(signal[0]) << "-s" << mode_name(signal[1]) << "|i"
      << mode_name(idler[0]) << "-i" << mode_name(idler[1]);
  return out.str();
}

double Distribution::sum() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

double wrap_phase(double phi) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  if (r > std::numbers::pi) r -= kTwoPi;
  return r;
}

std::array<double, 3> ExperimentConfig::bessel_amplitudes() const {
  std::array<double, 3> a{};
  for (int f = 0; f < kFreqBins; ++f) {
    a[f] = std::abs(std::cyl_bessel_j(static_cast<double>(std::abs(f - 1)),
                                      modulation_index));
  }
  if (equal_bessel) {
    const double rms =
        std::sqrt((a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) / kFreqBins);
    a = {rms, rms, rms};
  }
  return a;
}

ExperimentConfig ExperimentConfig::normalized() const {
  ExperimentConfig c = *this;
  c.x = wrap_phase(x);
  c.delta = wrap_phase(delta);
  c.xi_phase = wrap_phase(xi_phase);
  return c;
}

void ExperimentConfig::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(x) || !finite(delta) || !finite(xi_phase)) {
    throw ArgumentError("phases must be finite");
  }
  if (!finite(modulation_index) || modulation_index < 0.0) {
    throw ArgumentError("modulation_index must be non-negative");
  }
  if (!finite(xi_abs) || xi_abs < 0.0) {
    throw ArgumentError("xi_abs must be non-negative");
  }
  if (!(loss_db_signal >= 0.0) || !(loss_db_idler >= 0.0)) {
    throw ArgumentError("losses must be non-negative");
  }
  if (!(thermal_coeff >= 0.0)) {
    throw ArgumentError("thermal_coeff must be non-negative");
  }
}

PhaseGauge make_gauge(const ExperimentConfig& config, double theta_p,
                      double split) {
  PhaseGauge g;
  for (int f = 0; f < kFreqBins; ++f) {
    g.theta_signal[f] = split + (f - 1) * config.delta;
    g.theta_idler[f] = 2.0 * theta_p - split + (f - 1) * config.delta;
  }
  g.arg_xi_early = config.xi_phase;
  g.arg_xi_late = config.x - 2.0 * theta_p + config.xi_phase;
  return g;
}

PhaseGauge canonical_gauge(const ExperimentConfig& config) {
  return make_gauge(config, 0.5 * config.x, 0.5 * config.x);
}

std::vector<Pattern> enumerate_patterns() {
  std::vector<Pattern> out;
  const auto pairs = species_pairs();
  out.reserve(pairs.size() * pairs.size());
  for (const auto& s : pairs) {
    for (const auto& i : pairs) out.push_back(Pattern{s, i});
  }
  return out;
}

int pattern_index(const Pattern& p) {
  if (!p.valid()) return -1;
  static const std::vector<Pattern> kAll = enumerate_patterns();
  const auto it = std::lower_bound(kAll.begin(), kAll.end(), p);
  if (it == kAll.end() || *it != p) return -1;
  return static_cast<int>(it - kAll.begin());
}

CMatrix transfer_matrix(const ExperimentConfig& config, Species /*species*/,
                        const std::array<double, 3>& theta) {
  const auto amp = config.bessel_amplitudes();
  CMatrix t = CMatrix::Zero(kModesPerSpecies, kModesPerSpecies);
  for (int f = 0; f < kFreqBins; ++f) {
    t(f, kEarlyInput) = 0.5 * amp[f];
    t(kFreqBins + f, kEarlyInput) = 0.5 * amp[f];
    t(kFreqBins + f, kLateInput) = std::polar(0.5 * amp[f], theta[f]);
  }
  return t;
}

CMatrix c_matrix(const ExperimentConfig& config) {
  const auto amp = config.bessel_amplitudes();
  const double scale = 0.25 * std::tanh(config.xi_abs);
  CMatrix c(kModesPerSpecies, kModesPerSpecies);
  for (int q = 0; q < kModesPerSpecies; ++q) {
    for (int p = 0; p < kModesPerSpecies; ++p) {
      const int f = q % kFreqBins;
      const int g = p % kFreqBins;
      cplx block = 1.0;
      if (q >= kFreqBins && p >= kFreqBins) {
        block += std::polar(1.0, config.x + (f + g - 2) * config.delta);
      }
      c(q, p) = scale * amp[f] * amp[g] * block;
    }
  }
  return c;
}

CMatrix c_matrix_from_transfer(const ExperimentConfig& config,
                               const PhaseGauge& gauge) {
  const CMatrix ts = transfer_matrix(config, Species::kSignal, gauge.theta_signal);
  const CMatrix ti = transfer_matrix(config, Species::kIdler, gauge.theta_idler);
  CMatrix a = CMatrix::Zero(kModesPerSpecies, kModesPerSpecies);
  const double t = std::tanh(config.xi_abs);
  a(kEarlyInput, kEarlyInput) = std::polar(t, gauge.arg_xi_early);
  a(kLateInput, kLateInput) = std::polar(t, gauge.arg_xi_late);
  return ts * a * ti.transpose();
}

double pattern_probability(const CMatrix& c, double xi_abs, const Pattern& s) {
  if (!s.valid()) throw ArgumentError("invalid pattern " + s.label());
  CMatrix sub(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) sub(a, b) = c(s.signal[a], s.idler[b]);
  }
  const double ch = std::cosh(xi_abs);
  return std::norm(permanent(sub)) / (ch * ch * ch * ch);
}

double pattern_probability(const ExperimentConfig& config, const Pattern& s) {
  return pattern_probability(c_matrix(config), config.xi_abs, s);
}

double coincidence_probability(const ExperimentConfig& config, int signal,
                               int idler) {
  check_linear(signal);
  check_linear(idler);
  const double ch = std::cosh(config.xi_abs);
  return std::norm(c_matrix(config)(signal, idler)) / (ch * ch * ch * ch);
}

double franson_offset(int j, int k, double delta) {
  if (j < 0 || j >= kFreqBins || k < 0 || k >= kFreqBins) {
    throw ArgumentError("frequency index out of range");
  }
  return 2.0 * ((j + k) / 2.0 - 1.0) * delta;
}

double franson_probability(int j, int k, double x, double delta) {
  return 1.0 + std::cos(x + franson_offset(j, k, delta));
}

Distribution distribution_from_c(const CMatrix& c, double xi_abs) {
  Distribution d;
  d.patterns = enumerate_patterns();
  d.probs.resize(d.patterns.size());
  double total = 0.0;
  for (std::size_t i = 0; i < d.patterns.size(); ++i) {
    d.probs[i] = pattern_probability(c, xi_abs, d.patterns[i]);
    total += d.probs[i];
  }
  if (!(total > 0.0)) throw NumericError("no four-photon signal");
  for (double& p : d.probs) p /= total;
  return d;
}

Distribution full_distribution(const ExperimentConfig& config) {
  config.validate();
  return distribution_from_c(c_matrix(config), config.xi_abs);
}

}  // namespace tfgbs
