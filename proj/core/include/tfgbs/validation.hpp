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
#ifndef TFGBS_VALIDATION_HPP_
#define TFGBS_VALIDATION_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tfgbs/experiment.hpp"
#include "tfgbs/simulator.hpp"

namespace tfgbs {

struct SampleRecord {
  Pattern pattern;
  std::uint64_t timestamp = 0;
  std::string config_id;

  bool operator==(const SampleRecord&) const = default;
};

// i.i.d. categorical draws; timestamps run 0..n-1.
std::vector<SampleRecord> sample(const Distribution& dist, std::uint64_t seed,
                                 std::size_t n,
                                 const std::string& config_id = "");

double fidelity(const Distribution& p, const Distribution& q);

Distribution empirical_distribution(const std::vector<SampleRecord>& samples);

enum class Model { kSqueezed, kThermal, kCoherent, kDistinguishable, kUniform };

std::string model_name(Model model);
Model model_from_name(const std::string& name);

enum class SqueezedMethod { kGaussian, kPermanent };

struct ModelOptions {
  SqueezedMethod squeezed_method = SqueezedMethod::kGaussian;
  GaussianPipelineOptions pipeline;
};

Distribution model_distribution(Model model, const ExperimentConfig& config,
                                const ModelOptions& options = {});

struct BayesReport {
  std::vector<std::string> models;
  // posterior_trace[k] holds the posteriors after k + 1 samples.
  std::vector<std::vector<double>> posterior_trace;
};

// Uniform prior; log-domain accumulation. A model giving zero probability to
// an observed pattern is excluded permanently.
BayesReport bayesian_comparison(
    const std::vector<SampleRecord>& data,
    const std::vector<std::pair<std::string, Distribution>>& models);

BayesReport bayesian_comparison(const std::vector<SampleRecord>& data,
                                const std::vector<Model>& models,
                                const ExperimentConfig& config,
                                const ModelOptions& options = {});

// First prefix length after which every posterior except keep stays below
// threshold, or 0 if that never happens.
std::size_t samples_to_exclusion(const BayesReport& report, int keep,
                                 double threshold);

}  // namespace tfgbs

#endif  // TFGBS_VALIDATION_HPP_
