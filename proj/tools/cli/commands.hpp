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
#ifndef TFGBS_TOOLS_CLI_COMMANDS_HPP_
#define TFGBS_TOOLS_CLI_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tfgbs/experiment.hpp"
#include "tfgbs/simulator.hpp"

namespace tfgbs::cli {

// Command-line overrides; unset members keep the config-file value.
struct ExperimentFlags {
  std::optional<double> x;
  std::optional<double> delta;
  std::optional<double> modulation_index;
  std::optional<double> xi_abs;
  std::optional<double> xi_phase;
  std::optional<double> loss_db_signal;
  std::optional<double> loss_db_idler;
  std::optional<double> thermal_coeff;
  std::optional<bool> equal_bessel;

  void apply(ExperimentConfig& config) const;
};

struct PipelineFlags {
  std::optional<double> dilation_epsilon;
  std::optional<std::string> conditioning;
  std::optional<std::string> thermal_injection;
};

struct CommonArgs {
  std::string config_path;
  std::string out;
};

struct DistributionArgs {
  CommonArgs common;
  ExperimentFlags experiment;
  PipelineFlags pipeline;
  std::optional<std::string> method;
  std::optional<bool> compare;
};

struct SampleArgs {
  CommonArgs common;
  ExperimentFlags experiment;
  PipelineFlags pipeline;
  std::optional<std::string> method;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> seed;
};

struct ValidateArgs {
  CommonArgs common;
  ExperimentFlags experiment;
  PipelineFlags pipeline;
  std::optional<std::string> samples;
  std::optional<std::string> generator;
  std::optional<std::vector<std::string>> models;
  std::optional<std::string> keep;
  std::optional<std::string> squeezed_method;
  std::optional<double> threshold;
  std::optional<std::uint64_t> every;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> seed;
};

struct GraphsArgs {
  CommonArgs common;
  ExperimentFlags experiment;
  std::optional<std::string> samples;
  std::optional<std::vector<int>> vertices;
  std::optional<double> threshold;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> seed;
};

struct CompileArgs {
  CommonArgs common;
  std::optional<int> q;
  std::optional<int> m;
  std::optional<std::string> unitary;
  std::optional<std::uint64_t> seed;
};

struct HomArgs {
  CommonArgs common;
  std::optional<double> xi_min;
  std::optional<double> xi_max;
  std::optional<int> steps;
  std::optional<double> xi_point;
  std::optional<double> loss_db_signal;
  std::optional<double> loss_db_idler;
  std::optional<double> thermal_coeff;
  std::optional<std::string> reference;
  std::optional<std::string> thermal_injection;
};

struct FransonArgs {
  CommonArgs common;
  ExperimentFlags experiment;
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::optional<int> points;
};

void cmd_distribution(const DistributionArgs& args, std::ostream& out);
void cmd_sample(const SampleArgs& args, std::ostream& out);
void cmd_validate(const ValidateArgs& args, std::ostream& out);
void cmd_graphs(const GraphsArgs& args, std::ostream& out);
void cmd_compile(const CompileArgs& args, std::ostream& out);
void cmd_hom(const HomArgs& args, std::ostream& out);
void cmd_franson(const FransonArgs& args, std::ostream& out);

}  // namespace tfgbs::cli

#endif  // TFGBS_TOOLS_CLI_COMMANDS_HPP_
