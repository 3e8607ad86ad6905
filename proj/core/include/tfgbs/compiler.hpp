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
#ifndef TFGBS_COMPILER_HPP_
#define TFGBS_COMPILER_HPP_

#include <vector>

#include "tfgbs/types.hpp"

namespace tfgbs {

struct ModeGrid {
  int q_time_bins = 2;
  int m_freq_bins = 3;

  int n() const { return q_time_bins * m_freq_bins; }
  bool operator==(const ModeGrid&) const = default;
};

// Two-mode mixer givens_rotation(n, r, s, theta, phi); indices are 0-based.
struct Rotation {
  int r = 0;
  int s = 0;
  double theta = 0.0;
  double phi = 0.0;

  bool operator==(const Rotation&) const = default;
};

// Nearest-neighbour rotations (j, j + 1) in physical order followed by
// diagonal phases: U = diag(e^{i phases}) T_k ... T_1.
struct QfpProgram {
  int m = 0;
  std::vector<Rotation> rotations;
  std::vector<double> phases;

  CMatrix matrix() const;
  bool operator==(const QfpProgram&) const = default;
};

struct StageProgram {
  int stage_index = 0;
  QfpProgram pre_qfp;
  std::vector<Rotation> time_bs;
  // One QFP per later time bin; a single entry when Q = 2.
  std::vector<QfpProgram> post_qfps;

  bool operator==(const StageProgram&) const = default;
};

enum class StepKind { kQfp, kTimeBeamsplitter };

struct EliminationStep {
  int stage = 0;
  int row = 0;
  int col = 0;
  int r = 0;
  int s = 0;
  StepKind kind = StepKind::kQfp;
  int time_bin = 0;
};

struct CompiledCircuit {
  ModeGrid grid;
  std::vector<StageProgram> stages;
  std::vector<double> residual_phases;
  // Diagnostics from compile(); not part of the serialized program.
  std::vector<EliminationStep> log;

  bool same_program(const CompiledCircuit& other) const;
};

CompiledCircuit compile(const CMatrix& u, const ModeGrid& grid);

// Composite of one stage in physical order.
CMatrix stage_unitary(const StageProgram& stage, const ModeGrid& grid);

CMatrix reconstruct(const CompiledCircuit& circuit);

QfpProgram realize_qfp(const CMatrix& m_unitary);

// 0-based (row, col) entries in the order they are nullified.
std::vector<std::pair<int, int>> elimination_order(const ModeGrid& grid);

// Cross-time pairs (r, s) available in stage n (1-based stage index).
std::vector<std::pair<int, int>> allowed_time_pairs(const ModeGrid& grid,
                                                    int stage);

}  // namespace tfgbs

#endif  // TFGBS_COMPILER_HPP_
