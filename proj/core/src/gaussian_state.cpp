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
#include "tfgbs/gaussian_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "tfgbs/errors.hpp"
#include "tfgbs/matrix_kernels.hpp"

namespace tfgbs {
namespace {

void check_mode(const GaussianState& state, int mode) {
  if (mode < 0 || mode >= state.n_modes) {
    std::ostringstream msg;
    msg << "mode " << mode << " out of range for " << state.n_modes
        << "-mode state";
    throw ArgumentError(msg.str());
  }
}

void check_index_set(const GaussianState& state, const IndexSet& set) {
  std::vector<bool> seen(state.n_modes, false);
  for (int m : set) {
    check_mode(state, m);
    if (seen[m]) throw ArgumentError("repeated mode index in set");
    seen[m] = true;
  }
}

// Returns det(Q) and the quadratic form d^dag Q^{-1} d of a reduced state.
struct VacuumTerms {
  double det = 1.0;
  double quad = 0.0;
};

VacuumTerms vacuum_terms(const CMatrix& q, const CVector& d, bool has_disp) {
  Eigen::LDLT<CMatrix> ldlt(q);
  if (ldlt.info() != Eigen::Success) {
    throw NumericError("Q-covariance decomposition failed");
  }
  VacuumTerms out;
  const auto diag = ldlt.vectorD();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double v = diag(i).real();
    if (!(v > 0.0)) throw NumericError("Q-covariance is not positive definite");
    out.det *= v;
  }
  if (has_disp) out.quad = d.dot(ldlt.solve(d)).real();
  return out;
}

IndexSet quadrature_indices(const IndexSet& modes, int n_modes) {
  IndexSet idx;
  idx.reserve(2 * modes.size());
  for (int m : modes) idx.push_back(m);
  for (int m : modes) idx.push_back(m + n_modes);
  return idx;
}

GaussianState symplectic_update(const GaussianState& state, const CMatrix& s) {
  GaussianState out;
  out.n_modes = state.n_modes;
  out.sigma = s * state.sigma * s.adjoint();
  out.sigma = 0.5 * (out.sigma + out.sigma.adjoint()).eval();
  out.disp = s * state.disp;
  return out;
}

}  // namespace

CMatrix GaussianState::q_covariance() const {
  return sigma + 0.5 * CMatrix::Identity(2 * n_modes, 2 * n_modes);
}

GaussianState vacuum(int n_modes) {
  if (n_modes < 1) throw ArgumentError("vacuum needs at least one mode");
  GaussianState s;
  s.n_modes = n_modes;
  s.sigma = 0.5 * CMatrix::Identity(2 * n_modes, 2 * n_modes);
  s.disp = CVector::Zero(2 * n_modes);
  return s;
}

GaussianState apply_two_mode_squeeze(const GaussianState& state, int mode_a,
                                     int mode_b, cplx xi) {
  check_mode(state, mode_a);
  check_mode(state, mode_b);
  if (mode_a == mode_b) {
    throw ArgumentError("two-mode squeeze needs distinct modes");
  }
  if (xi == cplx(0.0)) return state;
  const int n = state.n_modes;
  const double r = std::abs(xi);
  const cplx b = std::polar(std::sinh(r), std::arg(xi));
  CMatrix s = CMatrix::Identity(2 * n, 2 * n);
  s(mode_a, mode_a) = s(mode_b, mode_b) = std::cosh(r);
  s(mode_a + n, mode_a + n) = s(mode_b + n, mode_b + n) = std::cosh(r);
  s(mode_a, mode_b + n) = s(mode_b, mode_a + n) = b;
  s(mode_a + n, mode_b) = s(mode_b + n, mode_a) = std::conj(b);
  return symplectic_update(state, s);
}

GaussianState apply_interferometer(const GaussianState& state,
                                   const CMatrix& u) {
  const int n = state.n_modes;
  if (u.rows() != n || u.cols() != n) {
    throw ArgumentError("interferometer size does not match mode count");
  }
  const double dev = unitarity_deviation(u);
  if (dev > 1e-10) {
    std::ostringstream msg;
    msg << "interferometer is not unitary (max deviation " << dev << ")";
    throw ArgumentError(msg.str());
  }
  GaussianState out;
  out.n_modes = n;
  out.sigma.resize(2 * n, 2 * n);
  const CMatrix uc = u.conjugate();
  // Block form keeps the cost at four n x n products per side.
  const auto s11 = state.sigma.topLeftCorner(n, n);
  const auto s12 = state.sigma.topRightCorner(n, n);
  const auto s21 = state.sigma.bottomLeftCorner(n, n);
  const auto s22 = state.sigma.bottomRightCorner(n, n);
  out.sigma.topLeftCorner(n, n) = u * s11 * u.adjoint();
  out.sigma.topRightCorner(n, n) = u * s12 * u.transpose();
  out.sigma.bottomLeftCorner(n, n) = uc * s21 * u.adjoint();
  out.sigma.bottomRightCorner(n, n) = uc * s22 * u.transpose();
  out.disp.resize(2 * n);
  out.disp.head(n) = u * state.disp.head(n);
  out.disp.tail(n) = uc * state.disp.tail(n);
  return out;
}

GaussianState apply_thermal_loss(const GaussianState& state, int mode,
                                 const LossChannelSpec& spec) {
  check_mode(state, mode);
  if (!(spec.transmissivity >= 0.0 && spec.transmissivity <= 1.0)) {
    throw ArgumentError("transmissivity must lie in [0, 1]");
  }
  if (!(spec.thermal_mean >= 0.0)) {
    throw ArgumentError("thermal mean must be non-negative");
  }
  if (spec.transmissivity == 1.0 && spec.thermal_mean == 0.0) return state;
  const int n = state.n_modes;
  const double t = std::sqrt(spec.transmissivity);
  GaussianState out = state;
  for (int idx : {mode, mode + n}) {
    out.sigma.row(idx) *= t;
    out.sigma.col(idx) *= t;
    out.disp(idx) *= t;
  }
  const double add = (1.0 - spec.transmissivity) * (spec.thermal_mean + 0.5);
  out.sigma(mode, mode) += add;
  out.sigma(mode + n, mode + n) += add;
  return out;
}

GaussianState apply_additive_noise(const GaussianState& state, int mode,
                                   double n_mean) {
  check_mode(state, mode);
  if (!(n_mean >= 0.0)) throw ArgumentError("noise must be non-negative");
  GaussianState out = state;
  out.sigma(mode, mode) += n_mean;
  out.sigma(mode + state.n_modes, mode + state.n_modes) += n_mean;
  return out;
}

GaussianState apply_displacement(const GaussianState& state, int mode,
                                 cplx alpha) {
  check_mode(state, mode);
  GaussianState out = state;
  out.disp(mode) += alpha;
  out.disp(mode + state.n_modes) += std::conj(alpha);
  return out;
}

GaussianState reduce(const GaussianState& state, const IndexSet& keep) {
  if (keep.empty()) throw ArgumentError("reduce needs a non-empty keep set");
  check_index_set(state, keep);
  const IndexSet idx = quadrature_indices(keep, state.n_modes);
  GaussianState out;
  out.n_modes = static_cast<int>(keep.size());
  out.sigma = state.sigma(idx, idx);
  out.disp = state.disp(idx);
  return out;
}

double vacuum_probability(const GaussianState& state, const IndexSet& subset) {
  check_index_set(state, subset);
  if (subset.empty()) return 1.0;
  const IndexSet idx = quadrature_indices(subset, state.n_modes);
  CMatrix q = state.sigma(idx, idx);
  q.diagonal().array() += 0.5;
  const CVector d = state.disp(idx);
  const bool has_disp = d.squaredNorm() > 0.0;
  const VacuumTerms t = vacuum_terms(q, d, has_disp);
  return std::exp(-0.5 * t.quad) / std::sqrt(t.det);
}

double threshold_click_probability(const GaussianState& state,
                                   const IndexSet& clicked,
                                   const IndexSet& dark) {
  IndexSet all = clicked;
  all.insert(all.end(), dark.begin(), dark.end());
  check_index_set(state, clicked);
  check_index_set(state, dark);
  {
    IndexSet sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ArgumentError("clicked and dark sets overlap");
    }
  }
  if (clicked.size() > 20) throw SizeError("too many clicked modes");
  if (all.empty()) return 1.0;
  const GaussianState red = reduce(state, all);
  const int c = static_cast<int>(clicked.size());
  const int dcount = static_cast<int>(dark.size());
  double total = 0.0;
  IndexSet subset;
  for (unsigned mask = 0; mask < (1u << c); ++mask) {
    subset.clear();
    for (int i = 0; i < c; ++i) {
      if (mask & (1u << i)) subset.push_back(i);
    }
    for (int i = 0; i < dcount; ++i) subset.push_back(c + i);
    const double sign = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
    total += sign * vacuum_probability(red, subset);
  }
  return std::clamp(total, 0.0, 1.0);
}

RVector mean_photon_numbers(const GaussianState& state) {
  const int n = state.n_modes;
  RVector out(n);
  for (int j = 0; j < n; ++j) {
    out(j) = std::max(0.0, state.sigma(j, j).real() - 0.5 +
                               std::norm(state.disp(j)));
  }
  return out;
}

double min_q_eigenvalue(const GaussianState& state) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(state.q_covariance(),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void check_physical(const GaussianState& state) {
  const double herm = (state.sigma - state.sigma.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) throw NumericError("covariance is not Hermitian");
  if (min_q_eigenvalue(state) < 1e-12) {
    throw NumericError("Q-covariance is not positive definite");
  }
}

}  // namespace tfgbs
