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
#include "tfgbs/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tfgbs/errors.hpp"
#include "tfgbs/matrix_kernels.hpp"

namespace tfgbs {
namespace {

void check_same_support(const Distribution& p, const Distribution& q) {
  if (p.patterns != q.patterns) {
    throw ArgumentError("distributions are defined over different patterns");
  }
  if (p.probs.size() != p.patterns.size() || q.probs.size() != q.patterns.size()) {
    throw ArgumentError("distribution size mismatch");
  }
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

cplx perm2(const CMatrix& t, const std::array<int, 2>& rows, int c0, int c1) {
  return t(rows[0], c0) * t(rows[1], c1) + t(rows[0], c1) * t(rows[1], c0);
}

Distribution distinguishable_distribution(const ExperimentConfig& config) {
  constexpr int kEarly = 1;
  constexpr int kLate = 4;
  const PhaseGauge gauge = canonical_gauge(config);
  const CMatrix ts = transfer_matrix(config, Species::kSignal, gauge.theta_signal);
  const CMatrix ti = transfer_matrix(config, Species::kIdler, gauge.theta_idler);
  Distribution d;
  d.patterns = enumerate_patterns();
  d.probs.resize(d.patterns.size());
  double total = 0.0;
  for (std::size_t k = 0; k < d.patterns.size(); ++k) {
    const Pattern& p = d.patterns[k];
    auto term = [&](int c0, int c1) {
      return perm2(ts, p.signal, c0, c1) * perm2(ti, p.idler, c0, c1);
    };
    // Both pairs from one source carry the bosonic 1/2 of a doubly
    // occupied input column.
    const double v = std::norm(0.5 * term(kEarly, kEarly)) +
                     std::norm(0.5 * term(kLate, kLate)) +
                     std::norm(term(kEarly, kLate));
    d.probs[k] = v;
    total += v;
  }
  if (!(total > 0.0)) throw NumericError("no four-photon signal");
  for (double& v : d.probs) v /= total;
  return d;
}

}  // namespace

std::vector<SampleRecord> sample(const Distribution& dist, std::uint64_t seed,
                                 std::size_t n, const std::string& config_id) {
  if (n < 1) throw ArgumentError("sample count must be at least 1");
  if (dist.probs.size() != dist.patterns.size() || dist.probs.empty()) {
    throw ArgumentError("malformed distribution");
  }
  std::vector<double> cdf(dist.probs.size());
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    if (!(dist.probs[i] >= 0.0)) throw ArgumentError("negative probability");
    acc += dist.probs[i];
    cdf[i] = acc;
    if (dist.probs[i] > 0.0) last_positive = i;
  }
  if (!(acc > 0.0)) throw ArgumentError("distribution has zero mass");
  std::mt19937_64 gen(seed);
  std::vector<SampleRecord> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = uniform01(gen) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx > last_positive) idx = last_positive;
    out[k] = SampleRecord{dist.patterns[idx], k, config_id};
  }
  return out;
}

double fidelity(const Distribution& p, const Distribution& q) {
  check_same_support(p, q);
  double f = 0.0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    f += std::sqrt(p.probs[i] * q.probs[i]);
  }
  return std::clamp(f, 0.0, 1.0);
}

Distribution empirical_distribution(const std::vector<SampleRecord>& samples) {
  Distribution d;
  d.patterns = enumerate_patterns();
  d.probs.assign(d.patterns.size(), 0.0);
  if (samples.empty()) throw ArgumentError("no samples");
  for (const auto& s : samples) {
    const int idx = pattern_index(s.pattern);
    if (idx < 0) throw ArgumentError("sample holds an invalid pattern");
    d.probs[idx] += 1.0;
  }
  for (double& v : d.probs) v /= static_cast<double>(samples.size());
  return d;
}

std::string model_name(Model model) {
  switch (model) {
    case Model::kSqueezed: return "squeezed";
    case Model::kThermal: return "thermal";
    case Model::kCoherent: return "coherent";
    case Model::kDistinguishable: return "distinguishable";
    case Model::kUniform: return "uniform";
  }
  return "unknown";
}

Model model_from_name(const std::string& name) {
  for (Model m : {Model::kSqueezed, Model::kThermal, Model::kCoherent,
                  Model::kDistinguishable, Model::kUniform}) {
    if (model_name(m) == name) return m;
  }
  throw ArgumentError("unknown model '" + name + "'");
}

Distribution model_distribution(Model model, const ExperimentConfig& config,
                                const ModelOptions& options) {
  GaussianPipelineOptions pipe = options.pipeline;
  switch (model) {
    case Model::kSqueezed:
      if (options.squeezed_method == SqueezedMethod::kPermanent) {
        return full_distribution(config);
      }
      pipe.source = SourceState::kSqueezed;
      return gbs_distribution_gaussian(config, pipe);
    case Model::kThermal:
      pipe.source = SourceState::kThermal;
      return gbs_distribution_gaussian(config, pipe);
    case Model::kCoherent:
      pipe.source = SourceState::kCoherent;
      return gbs_distribution_gaussian(config, pipe);
    case Model::kDistinguishable:
      config.validate();
      return distinguishable_distribution(config);
    case Model::kUniform: {
      Distribution d;
      d.patterns = enumerate_patterns();
      d.probs.assign(d.patterns.size(), 1.0 / static_cast<double>(d.patterns.size()));
      return d;
    }
  }
  throw ArgumentError("unknown model");
}

BayesReport bayesian_comparison(
    const std::vector<SampleRecord>& data,
    const std::vector<std::pair<std::string, Distribution>>& models) {
  if (data.empty()) throw ArgumentError("Bayesian comparison needs samples");
  if (models.empty()) throw ArgumentError("Bayesian comparison needs models");
  const std::size_t m = models.size();
  BayesReport report;
  std::vector<std::vector<double>> logp(m);
  for (std::size_t k = 0; k < m; ++k) {
    report.models.push_back(models[k].first);
    check_same_support(models[0].second, models[k].second);
    logp[k].resize(models[k].second.probs.size());
    for (std::size_t i = 0; i < logp[k].size(); ++i) {
      const double p = models[k].second.probs[i];
      logp[k][i] = p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
    }
  }
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> loglik(m, 0.0);
  report.posterior_trace.reserve(data.size());
  for (const auto& rec : data) {
    const int idx = pattern_index(rec.pattern);
    if (idx < 0) throw ArgumentError("sample holds an invalid pattern");
    double best = neg_inf;
    for (std::size_t k = 0; k < m; ++k) {
      if (loglik[k] != neg_inf) loglik[k] += logp[k][idx];
      best = std::max(best, loglik[k]);
    }
    if (best == neg_inf) {
      throw NumericError("every model assigns zero probability to the data");
    }
    std::vector<double> post(m, 0.0);
    double z = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (loglik[k] != neg_inf) {
        post[k] = std::exp(loglik[k] - best);
        z += post[k];
      }
    }
    for (double& v : post) v /= z;
    report.posterior_trace.push_back(std::move(post));
  }
  return report;
}

BayesReport bayesian_comparison(const std::vector<SampleRecord>& data,
                                const std::vector<Model>& models,
                                const ExperimentConfig& config,
                                const ModelOptions& options) {
  std::vector<std::pair<std::string, Distribution>> dists;
  for (Model m : models) {
    dists.emplace_back(model_name(m), model_distribution(m, config, options));
  }
  return bayesian_comparison(data, dists);
}

std::size_t samples_to_exclusion(const BayesReport& report, int keep,
                                 double threshold) {
  const auto& trace = report.posterior_trace;
  std::size_t first = 0;
  for (std::size_t k = trace.size(); k-- > 0;) {
    bool ok = true;
    for (std::size_t j = 0; j < trace[k].size(); ++j) {
      if (static_cast<int>(j) != keep && !(trace[k][j] < threshold)) ok = false;
    }
    if (!ok) break;
    first = k + 1;
  }
  return first;
}

}  // namespace tfgbs
