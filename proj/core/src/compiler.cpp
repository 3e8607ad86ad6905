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
#include "tfgbs/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tfgbs/errors.hpp"
#include "tfgbs/matrix_kernels.hpp"

namespace tfgbs {
namespace {

void check_grid(const ModeGrid& grid) {
  if (grid.q_time_bins < 1 || grid.m_freq_bins < 1) {
    throw ArgumentError("mode grid dimensions must be positive");
  }
}

void check_unitary(const CMatrix& u, const char* what) {
  if (u.rows() != u.cols()) {
    throw ArgumentError(std::string(what) + " must be square");
  }
  const double dev = unitarity_deviation(u);
  if (dev > 1e-10) {
    std::ostringstream msg;
    msg << what << " is not unitary (max deviation " << dev << ")";
    throw ArgumentError(msg.str());
  }
}

// Angles that null entry (row, r) by rotating (r, s) with U <- U T^dag.
Rotation nulling_rotation(const CMatrix& u, int row, int r, int s) {
  const cplx a = u(row, r);
  const cplx b = u(row, s);
  Rotation rot{r, s, 0.0, 0.0};
  if (std::abs(a) == 0.0) return rot;
  rot.theta = std::atan2(std::abs(a), std::abs(b));
  rot.phi = std::abs(b) == 0.0 ? std::arg(a) : std::arg(a) - std::arg(b);
  return rot;
}

// U <- U T^dag restricted to columns (r, s).
void apply_right_inverse(CMatrix& u, const Rotation& rot) {
  const cplx e = std::polar(1.0, -rot.phi);
  const double c = std::cos(rot.theta);
  const double s = std::sin(rot.theta);
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const cplx x = u(i, rot.r);
    const cplx y = u(i, rot.s);
    u(i, rot.r) = x * e * c - y * s;
    u(i, rot.s) = x * e * s + y * c;
  }
}

// U <- T U for a rotation on rows (r, s).
void apply_left(CMatrix& u, const Rotation& rot) {
  const cplx e = std::polar(1.0, rot.phi);
  const double c = std::cos(rot.theta);
  const double s = std::sin(rot.theta);
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const cplx x = u(rot.r, j);
    const cplx y = u(rot.s, j);
    u(rot.r, j) = e * c * x - s * y;
    u(rot.s, j) = e * s * x + c * y;
  }
}

void embed_qfp(CMatrix& u, const QfpProgram& q, int offset) {
  const CMatrix local = q.matrix();
  u.block(offset, 0, q.m, u.cols()) = local * u.block(offset, 0, q.m, u.cols());
}

}  // namespace

CMatrix QfpProgram::matrix() const {
  CMatrix u = CMatrix::Identity(m, m);
  for (const auto& rot : rotations) apply_left(u, rot);
  for (int j = 0; j < m && j < static_cast<int>(phases.size()); ++j) {
    u.row(j) *= std::polar(1.0, phases[j]);
  }
  return u;
}

bool CompiledCircuit::same_program(const CompiledCircuit& other) const {
  return grid == other.grid && stages == other.stages &&
         residual_phases == other.residual_phases;
}

std::vector<std::pair<int, int>> allowed_time_pairs(const ModeGrid& grid,
                                                    int stage) {
  check_grid(grid);
  const int m = grid.m_freq_bins;
  std::vector<std::pair<int, int>> out;
  for (int q = 1; q < grid.q_time_bins; ++q) {
    const int r = q * m - stage + 1;
    const int s = (q + 1) * m - stage + 1;
    if (r >= 1) out.emplace_back(r - 1, s - 1);
  }
  return out;
}

QfpProgram realize_qfp(const CMatrix& m_unitary) {
  check_unitary(m_unitary, "QFP unitary");
  const int m = static_cast<int>(m_unitary.rows());
  QfpProgram out;
  out.m = m;
  CMatrix w = m_unitary;
  // Null row R from the left, pushing weight rightwards along (c, c + 1).
  for (int row = m - 1; row >= 1; --row) {
    for (int c = 0; c < row; ++c) {
      if (std::abs(w(row, c)) == 0.0) continue;
      const Rotation rot = nulling_rotation(w, row, c, c + 1);
      apply_right_inverse(w, rot);
      w(row, c) = 0.0;
      out.rotations.push_back(rot);
    }
  }
  // w = diag(e^{i phases}) and m_unitary = w T_k ... T_1, so the discovery
  // order is also the physical order.
  out.phases.resize(m);
  for (int j = 0; j < m; ++j) out.phases[j] = std::arg(w(j, j));
  return out;
}

CompiledCircuit compile(const CMatrix& u, const ModeGrid& grid) {
  check_grid(grid);
  const int n = grid.n();
  const int m = grid.m_freq_bins;
  const int q_bins = grid.q_time_bins;
  if (u.rows() != n || u.cols() != n) {
    throw ArgumentError("unitary size does not match Q * M");
  }
  check_unitary(u, "target");

  CompiledCircuit out;
  out.grid = grid;
  CMatrix w = u;
  for (int stage = 1; stage <= n - 1; ++stage) {
    const int row = n - stage;
    const int row_bin = row / m;
    std::vector<CMatrix> qfp_local(q_bins, CMatrix::Identity(m, m));
    StageProgram prog;
    prog.stage_index = stage;
    const auto pairs = allowed_time_pairs(grid, stage);

    for (int bin = 0; bin < q_bins; ++bin) {
      if (bin <= row_bin) {
        const int exit = row - (row_bin - bin) * m;
        for (int c = bin * m; c < (bin + 1) * m && c <= row; ++c) {
          if (c == exit) continue;
          const Rotation rot = nulling_rotation(w, row, c, exit);
          apply_right_inverse(w, rot);
          w(row, c) = 0.0;
          apply_left(qfp_local[bin],
                     Rotation{c - bin * m, exit - bin * m, rot.theta, rot.phi});
          out.log.push_back({stage, row, c, c, exit, StepKind::kQfp, bin});
        }
      }
      if (bin + 1 < q_bins) {
        // The stage's cross pair leaving this bin, if any.
        for (const auto& [r, s] : pairs) {
          if (r / m != bin) continue;
          if (s > row) {
            throw NumericError("cross-time pair beyond the elimination row");
          }
          const Rotation rot = nulling_rotation(w, row, r, s);
          apply_right_inverse(w, rot);
          w(row, r) = 0.0;
          prog.time_bs.push_back(rot);
          out.log.push_back({stage, row, r, r, s, StepKind::kTimeBeamsplitter, bin});
        }
      }
    }
    for (int c = 0; c < row; ++c) {
      if (std::abs(w(row, c)) > 1e-9) {
        throw NumericError("elimination left a non-zero entry");
      }
    }
    prog.pre_qfp = realize_qfp(qfp_local[0]);
    for (int bin = 1; bin < q_bins; ++bin) {
      prog.post_qfps.push_back(realize_qfp(qfp_local[bin]));
    }
    out.stages.push_back(std::move(prog));
  }
  out.residual_phases.resize(n);
  for (int j = 0; j < n; ++j) out.residual_phases[j] = std::arg(w(j, j));
  return out;
}

CMatrix stage_unitary(const StageProgram& stage, const ModeGrid& grid) {
  check_grid(grid);
  const int n = grid.n();
  const int m = grid.m_freq_bins;
  CMatrix u = CMatrix::Identity(n, n);
  embed_qfp(u, stage.pre_qfp, 0);
  for (int bin = 1; bin < grid.q_time_bins; ++bin) {
    for (const auto& rot : stage.time_bs) {
      if (rot.r / m == bin - 1) apply_left(u, rot);
    }
    if (bin - 1 < static_cast<int>(stage.post_qfps.size())) {
      embed_qfp(u, stage.post_qfps[bin - 1], bin * m);
    }
  }
  return u;
}

CMatrix reconstruct(const CompiledCircuit& circuit) {
  const int n = circuit.grid.n();
  CMatrix u = CMatrix::Identity(n, n);
  for (const auto& st : circuit.stages) u = stage_unitary(st, circuit.grid) * u;
  for (int j = 0; j < n && j < static_cast<int>(circuit.residual_phases.size()); ++j) {
    u.row(j) *= std::polar(1.0, circuit.residual_phases[j]);
  }
  return u;
}

std::vector<std::pair<int, int>> elimination_order(const ModeGrid& grid) {
  // The order depends only on the grid; compiling a generic unitary records it.
  check_grid(grid);
  const int n = grid.n();
  CMatrix u(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      u(i, j) = std::polar(1.0, 2.0 * std::numbers::pi * i * j / n) /
                std::sqrt(static_cast<double>(n));
    }
  }
  const CompiledCircuit c = compile(u, grid);
  std::vector<std::pair<int, int>> out;
  for (const auto& step : c.log) out.emplace_back(step.row, step.col);
  return out;
}

}  // namespace tfgbs
