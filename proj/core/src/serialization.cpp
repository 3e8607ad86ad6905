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
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "tfgbs/errors.hpp"
#include "tfgbs/io.hpp"

namespace tfgbs {
namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

std::string position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream out;
  out << "line " << line << ", column " << col;
  return out.str();
}

template <typename E>
json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw E(std::string(what) + ": malformed JSON at " +
            position_of(text, e.byte > 0 ? e.byte - 1 : 0));
  }
}

double number_field(const json& obj, const std::string& key,
                    const std::string& context) {
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(context + "." + key + ": expected a number");
  }
  return v.get<double>();
}

ordered_json rotation_to_json(const Rotation& r) {
  ordered_json j;
  j["pair"] = {r.r, r.s};
  j["theta"] = r.theta;
  j["phi"] = r.phi;
  return j;
}

Rotation rotation_from_json(const json& j) {
  Rotation r;
  r.r = j.at("pair").at(0).get<int>();
  r.s = j.at("pair").at(1).get<int>();
  r.theta = j.at("theta").get<double>();
  r.phi = j.at("phi").get<double>();
  return r;
}

ordered_json qfp_to_json(const QfpProgram& q) {
  ordered_json j;
  j["m"] = q.m;
  j["rotations"] = ordered_json::array();
  for (const auto& r : q.rotations) j["rotations"].push_back(rotation_to_json(r));
  j["phases"] = q.phases;
  return j;
}

QfpProgram qfp_from_json(const json& j) {
  QfpProgram q;
  q.m = j.at("m").get<int>();
  for (const auto& r : j.at("rotations")) q.rotations.push_back(rotation_from_json(r));
  q.phases = j.at("phases").get<std::vector<double>>();
  return q;
}

ordered_json matrix_to_ordered(const CMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back({m(i, k).real(), m(i, k).imag()});
    }
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_value(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw ArgumentError("matrix must be a non-empty array");
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = rows.at(0).size();
  CMatrix m(n_rows, n_cols);
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (rows[i].size() != n_cols) throw ArgumentError("ragged matrix rows");
    for (std::size_t k = 0; k < n_cols; ++k) {
      const json& e = rows[i][k];
      m(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  const json obj = parse_json<ConfigError>(json_text, "experiment config");
  if (!obj.is_object()) throw ConfigError("experiment: expected an object");
  const std::string ctx = "experiment";
  ExperimentConfig c;
  for (const auto& [key, value] : obj.items()) {
    if (key == "x") c.x = number_field(obj, key, ctx);
    else if (key == "delta") c.delta = number_field(obj, key, ctx);
    else if (key == "modulation_index") c.modulation_index = number_field(obj, key, ctx);
    else if (key == "xi_abs") c.xi_abs = number_field(obj, key, ctx);
    else if (key == "xi_phase") c.xi_phase = number_field(obj, key, ctx);
    else if (key == "loss_db_signal") c.loss_db_signal = number_field(obj, key, ctx);
    else if (key == "loss_db_idler") c.loss_db_idler = number_field(obj, key, ctx);
    else if (key == "thermal_coeff") c.thermal_coeff = number_field(obj, key, ctx);
    else if (key == "equal_bessel") {
      if (!value.is_boolean()) throw ConfigError(ctx + ".equal_bessel: expected a boolean");
      c.equal_bessel = value.get<bool>();
    } else {
      throw ConfigError(ctx + "." + key + ": unknown field");
    }
  }
  try {
    c.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
  return c;
}

std::string experiment_config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["x"] = c.x;
  j["delta"] = c.delta;
  j["modulation_index"] = c.modulation_index;
  j["equal_bessel"] = c.equal_bessel;
  j["xi_abs"] = c.xi_abs;
  j["xi_phase"] = c.xi_phase;
  j["loss_db_signal"] = c.loss_db_signal;
  j["loss_db_idler"] = c.loss_db_idler;
  j["thermal_coeff"] = c.thermal_coeff;
  return j.dump();
}

std::string sample_to_line(const SampleRecord& r) {
  ordered_json j;
  j["signal"] = {r.pattern.signal[0], r.pattern.signal[1]};
  j["idler"] = {r.pattern.idler[0], r.pattern.idler[1]};
  j["timestamp"] = r.timestamp;
  j["config_id"] = r.config_id;
  return j.dump();
}

SampleRecord sample_from_line(std::string_view line) {
  const json j = parse_json<IoError>(line, "sample record");
  try {
    SampleRecord r;
    r.pattern.signal = {j.at("signal").at(0).get<int>(), j.at("signal").at(1).get<int>()};
    r.pattern.idler = {j.at("idler").at(0).get<int>(), j.at("idler").at(1).get<int>()};
    r.timestamp = j.at("timestamp").get<std::uint64_t>();
    r.config_id = j.at("config_id").get<std::string>();
    if (!r.pattern.valid()) throw IoError("sample record holds an invalid pattern");
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("sample record: ") + e.what());
  }
}

void write_samples(std::ostream& out, const std::vector<SampleRecord>& samples) {
  for (const auto& s : samples) out << sample_to_line(s) << '\n';
  if (!out) throw IoError("failed to write samples");
}

std::vector<SampleRecord> read_samples(std::istream& in) {
  std::vector<SampleRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(sample_from_line(line));
    } catch (const IoError& e) {
      throw IoError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string graph_to_text(const BipartiteGraph& g) {
  ordered_json j;
  j["signal"] = g.signal_vertices;
  j["idler"] = g.idler_vertices;
  j["weights"] = matrix_to_ordered(g.weights);
  return j.dump();
}

BipartiteGraph graph_from_text(std::string_view text) {
  const json j = parse_json<IoError>(text, "graph record");
  try {
    BipartiteGraph g;
    g.signal_vertices = j.at("signal").get<IndexSet>();
    g.idler_vertices = j.at("idler").get<IndexSet>();
    g.weights = matrix_from_value(j.at("weights"));
    if (g.weights.rows() != static_cast<Eigen::Index>(g.signal_vertices.size()) ||
        g.weights.cols() != static_cast<Eigen::Index>(g.idler_vertices.size())) {
      throw IoError("graph record: weight shape does not match vertex lists");
    }
    return g;
  } catch (const json::exception& e) {
    throw IoError(std::string("graph record: ") + e.what());
  } catch (const ArgumentError& e) {
    throw IoError(std::string("graph record: ") + e.what());
  }
}

std::string circuit_to_text(const CompiledCircuit& c) {
  ordered_json j;
  j["format"] = "tfgbs-circuit";
  j["version"] = 1;
  j["grid"] = {{"q_time_bins", c.grid.q_time_bins}, {"m_freq_bins", c.grid.m_freq_bins}};
  j["stages"] = ordered_json::array();
  for (const auto& st : c.stages) {
    ordered_json s;
    s["stage"] = st.stage_index;
    s["pre_qfp"] = qfp_to_json(st.pre_qfp);
    s["time_bs"] = ordered_json::array();
    for (const auto& r : st.time_bs) s["time_bs"].push_back(rotation_to_json(r));
    s["post_qfps"] = ordered_json::array();
    for (const auto& q : st.post_qfps) s["post_qfps"].push_back(qfp_to_json(q));
    j["stages"].push_back(s);
  }
  j["residual_phases"] = c.residual_phases;
  return j.dump(1);
}

CompiledCircuit circuit_from_text(std::string_view text) {
  const json j = parse_json<IoError>(text, "circuit");
  try {
    if (j.at("format").get<std::string>() != "tfgbs-circuit") {
      throw IoError("circuit: unexpected format tag");
    }
    CompiledCircuit c;
    c.grid.q_time_bins = j.at("grid").at("q_time_bins").get<int>();
    c.grid.m_freq_bins = j.at("grid").at("m_freq_bins").get<int>();
    for (const auto& s : j.at("stages")) {
      StageProgram st;
      st.stage_index = s.at("stage").get<int>();
      st.pre_qfp = qfp_from_json(s.at("pre_qfp"));
      for (const auto& r : s.at("time_bs")) st.time_bs.push_back(rotation_from_json(r));
      for (const auto& q : s.at("post_qfps")) st.post_qfps.push_back(qfp_from_json(q));
      c.stages.push_back(std::move(st));
    }
    c.residual_phases = j.at("residual_phases").get<std::vector<double>>();
    return c;
  } catch (const json::exception& e) {
    throw IoError(std::string("circuit: ") + e.what());
  }
}

std::string matrix_to_json(const CMatrix& m) { return matrix_to_ordered(m).dump(); }

CMatrix matrix_from_json(std::string_view text) {
  const json j = parse_json<IoError>(text, "matrix");
  try {
    return matrix_from_value(j);
  } catch (const json::exception& e) {
    throw IoError(std::string("matrix: ") + e.what());
  }
}

}  // namespace tfgbs
