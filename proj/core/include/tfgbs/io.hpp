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
#ifndef TFGBS_IO_HPP_
#define TFGBS_IO_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tfgbs/compiler.hpp"
#include "tfgbs/experiment.hpp"
#include "tfgbs/graphs.hpp"
#include "tfgbs/validation.hpp"

namespace tfgbs {

// JSON object with the canonical field names. Unknown fields are rejected;
// errors name the offending field and throw ConfigError.
ExperimentConfig parse_experiment_config(std::string_view json_text);
std::string experiment_config_to_json(const ExperimentConfig& config);

// One JSON object per line:
//   {"signal":[a,b],"idler":[c,d],"timestamp":t,"config_id":"..."}
std::string sample_to_line(const SampleRecord& record);
SampleRecord sample_from_line(std::string_view line);
void write_samples(std::ostream& out, const std::vector<SampleRecord>& samples);
std::vector<SampleRecord> read_samples(std::istream& in);

std::string graph_to_text(const BipartiteGraph& graph);
BipartiteGraph graph_from_text(std::string_view text);

std::string circuit_to_text(const CompiledCircuit& circuit);
CompiledCircuit circuit_from_text(std::string_view text);

std::string matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(std::string_view text);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace tfgbs

#endif  // TFGBS_IO_HPP_
