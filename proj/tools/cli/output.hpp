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
#ifndef TFGBS_TOOLS_CLI_OUTPUT_HPP_
#define TFGBS_TOOLS_CLI_OUTPUT_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace tfgbs::cli {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view data);

// Deterministic identifier of a run: command, resolved config and seed.
std::string make_run_id(const std::string& command, const ordered_json& config,
                        std::optional<std::uint64_t> seed);

// Companion manifest of a data file: "<out>.manifest.json".
std::filesystem::path manifest_path_for(const std::filesystem::path& out);

// "# manifest: <file> run_id=<id>" header line for CSV outputs.
std::string csv_manifest_comment(const std::filesystem::path& out,
                                 const std::string& run_id);

class CsvWriter {
 public:
  CsvWriter(std::string comment, std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::string comment_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Parses back a CSV written by CsvWriter and checks header and row shape.
void validate_csv(std::string_view text, const std::vector<std::string>& header,
                  std::size_t expected_rows);

// Collects outputs, validates each in memory, then writes them atomically
// together with the manifest. Nothing is written if any validation fails.
class RunOutputs {
 public:
  RunOutputs(std::string command, ordered_json config,
             std::optional<std::uint64_t> seed);

  const std::string& run_id() const { return run_id_; }

  void add(const std::filesystem::path& path, std::string content,
           std::function<void(std::string_view)> validator);
  void set_summary(ordered_json summary) { summary_ = std::move(summary); }

  // Writes every file, re-reads it for a byte comparison, then the manifest.
  void commit();

 private:
  struct Pending {
    std::filesystem::path path;
    std::string content;
    std::function<void(std::string_view)> validator;
  };

  std::string command_;
  ordered_json config_;
  std::optional<std::uint64_t> seed_;
  std::string run_id_;
  std::vector<Pending> files_;
  ordered_json summary_ = ordered_json::object();
  std::chrono::system_clock::time_point started_;
  std::chrono::steady_clock::time_point clock_start_;
};

std::string read_text_file(const std::filesystem::path& path);

}  // namespace tfgbs::cli

#endif  // TFGBS_TOOLS_CLI_OUTPUT_HPP_
