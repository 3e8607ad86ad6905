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
#include "cli/config.hpp"

#include "cli/output.hpp"
#include "tfgbs/errors.hpp"
#include "tfgbs/io.hpp"

namespace tfgbs::cli {
namespace {

using nlohmann::json;

std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  return parse(read_text_file(path), path.string());
}

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile f;
  try {
    f.root_ = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": malformed JSON at " +
                      position(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!f.root_.is_object()) throw ConfigError(origin + ": expected a JSON object");
  for (const auto& [key, value] : f.root_.items()) {
    if (kConfigSections.count(key) == 0) {
      throw ConfigError(origin + ": unknown section '" + key + "'");
    }
    if (!value.is_object()) throw ConfigError(key + ": expected an object");
  }
  return f;
}

ExperimentConfig ConfigFile::experiment() const {
  const json* s = section("experiment");
  return s == nullptr ? ExperimentConfig{} : parse_experiment_config(s->dump());
}

const json* ConfigFile::section(const std::string& name) const {
  const auto it = root_.find(name);
  return it == root_.end() ? nullptr : &*it;
}

SectionReader::SectionReader(const ConfigFile& file, std::string name)
    : obj_(file.section(name)), name_(std::move(name)) {}

const json* SectionReader::find(const std::string& key) {
  if (obj_ == nullptr) return nullptr;
  const auto it = obj_->find(key);
  if (it == obj_->end()) return nullptr;
  used_.insert(key);
  return &*it;
}

void SectionReader::fail(const std::string& key, const std::string& what) const {
  throw ConfigError(name_ + "." + key + ": " + what);
}

void SectionReader::read(const std::string& key, double& out) {
  if (const json* v = find(key)) {
    if (!v->is_number()) fail(key, "expected a number");
    out = v->get<double>();
  }
}

void SectionReader::read(const std::string& key, int& out) {
  if (const json* v = find(key)) {
    if (!v->is_number_integer()) fail(key, "expected an integer");
    out = v->get<int>();
  }
}

void SectionReader::read(const std::string& key, std::uint64_t& out) {
  if (const json* v = find(key)) {
    if (!v->is_number_unsigned()) fail(key, "expected a non-negative integer");
    out = v->get<std::uint64_t>();
  }
}

void SectionReader::read(const std::string& key, std::optional<std::uint64_t>& out) {
  std::uint64_t value = 0;
  if (obj_ != nullptr && obj_->contains(key)) {
    read(key, value);
    out = value;
  }
}

void SectionReader::read(const std::string& key, bool& out) {
  if (const json* v = find(key)) {
    if (!v->is_boolean()) fail(key, "expected a boolean");
    out = v->get<bool>();
  }
}

void SectionReader::read(const std::string& key, std::string& out) {
  if (const json* v = find(key)) {
    if (!v->is_string()) fail(key, "expected a string");
    out = v->get<std::string>();
  }
}

void SectionReader::read(const std::string& key, std::vector<std::string>& out) {
  if (const json* v = find(key)) {
    if (!v->is_array()) fail(key, "expected an array of strings");
    out.clear();
    for (const auto& e : *v) {
      if (!e.is_string()) fail(key, "expected an array of strings");
      out.push_back(e.get<std::string>());
    }
  }
}

void SectionReader::read(const std::string& key, std::vector<int>& out) {
  if (const json* v = find(key)) {
    if (!v->is_array()) fail(key, "expected an array of integers");
    out.clear();
    for (const auto& e : *v) {
      if (!e.is_number_integer()) fail(key, "expected an array of integers");
      out.push_back(e.get<int>());
    }
  }
}

void SectionReader::finish() const {
  if (obj_ == nullptr) return;
  for (const auto& [key, value] : obj_->items()) {
    if (used_.count(key) == 0) fail(key, "unknown field");
  }
}

Conditioning parse_conditioning(const std::string& name) {
  if (name == "trace-out") return Conditioning::kTraceOut;
  if (name == "dark") return Conditioning::kDarkPostSelect;
  throw ConfigError("conditioning must be 'trace-out' or 'dark', got '" + name + "'");
}

std::string conditioning_name(Conditioning c) {
  return c == Conditioning::kTraceOut ? "trace-out" : "dark";
}

ThermalInjection parse_thermal_injection(const std::string& name) {
  if (name == "source") return ThermalInjection::kSourceNoise;
  if (name == "lumped") return ThermalInjection::kLumpedChannel;
  throw ConfigError("thermal injection must be 'source' or 'lumped', got '" + name + "'");
}

std::string thermal_injection_name(ThermalInjection t) {
  return t == ThermalInjection::kSourceNoise ? "source" : "lumped";
}

HomReference parse_hom_reference(const std::string& name) {
  if (name == "half-loss") return HomReference::kHalfLoss;
  if (name == "direct") return HomReference::kDirect;
  throw ConfigError("HOM reference must be 'half-loss' or 'direct', got '" + name + "'");
}

std::string hom_reference_name(HomReference r) {
  return r == HomReference::kHalfLoss ? "half-loss" : "direct";
}

}  // namespace tfgbs::cli
