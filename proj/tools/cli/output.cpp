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
#include "cli/output.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include "tfgbs/errors.hpp"
#include "tfgbs/version.hpp"

namespace tfgbs::cli {
namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string make_run_id(const std::string& command, const ordered_json& config,
                        std::optional<std::uint64_t> seed) {
  std::string key = command + "\n" + config.dump() + "\n";
  key += seed ? std::to_string(*seed) : std::string("-");
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(key)));
  return buf;
}

fs::path manifest_path_for(const fs::path& out) {
  return fs::path(out.string() + ".manifest.json");
}

std::string csv_manifest_comment(const fs::path& out, const std::string& run_id) {
  return "# manifest: " + manifest_path_for(out).filename().string() +
         " run_id=" + run_id;
}

CsvWriter::CsvWriter(std::string comment, std::vector<std::string> header)
    : comment_(std::move(comment)), header_(std::move(header)) {}

void CsvWriter::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw Error("CSV row width does not match header");
  }
  rows_.push_back(std::move(cells));
}

namespace {

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  out += '\n';
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void write_file_atomically(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  const fs::path tmp = fs::path(path.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("failed writing " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

}  // namespace

std::string CsvWriter::str() const {
  std::string out;
  if (!comment_.empty()) out += comment_ + "\n";
  append_line(out, header_);
  for (const auto& r : rows_) append_line(out, r);
  return out;
}

void validate_csv(std::string_view text, const std::vector<std::string>& header,
                  std::size_t expected_rows) {
  std::size_t pos = 0;
  bool seen_header = false;
  std::size_t rows = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) throw IoError("CSV output lacks a final newline");
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.front() == '#') continue;
    const auto cells = split(line, ',');
    if (!seen_header) {
      if (cells != header) throw IoError("CSV output header mismatch");
      seen_header = true;
      continue;
    }
    if (cells.size() != header.size()) throw IoError("CSV output row has the wrong width");
    ++rows;
  }
  if (!seen_header || rows != expected_rows) throw IoError("CSV output row count mismatch");
}

RunOutputs::RunOutputs(std::string command, ordered_json config,
                       std::optional<std::uint64_t> seed)
    : command_(std::move(command)),
      config_(std::move(config)),
      seed_(seed),
      run_id_(make_run_id(command_, config_, seed_)),
      started_(std::chrono::system_clock::now()),
      clock_start_(std::chrono::steady_clock::now()) {}

void RunOutputs::add(const fs::path& path, std::string content,
                     std::function<void(std::string_view)> validator) {
  files_.push_back({path, std::move(content), std::move(validator)});
}

void RunOutputs::commit() {
  for (const auto& f : files_) {
    if (f.validator) f.validator(f.content);
  }
  ordered_json outputs = ordered_json::array();
  for (const auto& f : files_) {
    write_file_atomically(f.path, f.content);
    if (read_text_file(f.path) != f.content) {
      throw IoError("read-back of " + f.path.string() + " differs from what was written");
    }
    outputs.push_back(f.path.string());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start_).count();
  ordered_json m;
  m["run_id"] = run_id_;
  m["command"] = command_;
  m["version"] = std::string(kVersion);
  m["seed"] = seed_ ? ordered_json(*seed_) : ordered_json(nullptr);
  m["config"] = config_;
  m["outputs"] = outputs;
  m["summary"] = summary_;
  m["started_at"] = utc_timestamp(started_);
  m["duration_seconds"] = seconds;
  if (!files_.empty()) {
    write_file_atomically(manifest_path_for(files_.front().path), m.dump(2) + "\n");
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  if (f.bad()) throw IoError("failed reading " + path.string());
  return s.str();
}

}  // namespace tfgbs::cli
