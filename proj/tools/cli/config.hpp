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
#ifndef TFGBS_TOOLS_CLI_CONFIG_HPP_
#define TFGBS_TOOLS_CLI_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tfgbs/experiment.hpp"
#include "tfgbs/simulator.hpp"

namespace tfgbs::cli {

// Top-level sections accepted in a config file.
inline const std::set<std::string> kConfigSections = {
    "experiment", "pipeline", "distribution", "sample", "validate",
    "graphs",     "compile",  "hom",          "franson"};

// Parsed config file; an absent file is an empty object.
class ConfigFile {
 public:
  ConfigFile() = default;
  static ConfigFile load(const std::filesystem::path& path);
  static ConfigFile parse(const std::string& text, const std::string& origin);

  // Experiment section parsed with the library's strict reader.
  ExperimentConfig experiment() const;
  const nlohmann::json* section(const std::string& name) const;

 private:
  nlohmann::json root_ = nlohmann::json::object();
};

// Reads typed fields from one section and rejects any it did not consume.
class SectionReader {
 public:
  SectionReader(const ConfigFile& file, std::string name);

  void read(const std::string& key, double& out);
  void read(const std::string& key, int& out);
  void read(const std::string& key, std::uint64_t& out);
  void read(const std::string& key, std::optional<std::uint64_t>& out);
  void read(const std::string& key, bool& out);
  void read(const std::string& key, std::string& out);
  void read(const std::string& key, std::vector<std::string>& out);
  void read(const std::string& key, std::vector<int>& out);
  void finish() const;

 private:
  const nlohmann::json* find(const std::string& key);
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  const nlohmann::json* obj_;
  std::string name_;
  std::set<std::string> used_;
};

Conditioning parse_conditioning(const std::string& name);
std::string conditioning_name(Conditioning c);
ThermalInjection parse_thermal_injection(const std::string& name);
std::string thermal_injection_name(ThermalInjection t);
HomReference parse_hom_reference(const std::string& name);
std::string hom_reference_name(HomReference r);

}  // namespace tfgbs::cli

#endif  // TFGBS_TOOLS_CLI_CONFIG_HPP_
