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
#include "tfgbs/matrix_kernels.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <sstream>
#include <vector>

#include "tfgbs/errors.hpp"

namespace tfgbs {

cplx permanent(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ArgumentError("permanent needs a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n > kMaxPermanentSize) {
    std::ostringstream msg;
    msg << "permanent size " << n << " exceeds cap " << kMaxPermanentSize;
    throw SizeError(msg.str());
  }
  if (n == 0) return 1.0;
  // Ryser: perm(A) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij, with the
  // subsets visited in Gray-code order so each step toggles one column.
  std::vector<cplx> row_sums(n, cplx(0.0));
  cplx total = 0.0;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int col = std::countr_zero(k);
    gray ^= std::uint64_t{1} << col;
    const double sign = (gray >> col) & 1 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) row_sums[i] += sign * m(i, col);
    cplx prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= row_sums[i];
    total += (std::popcount(gray) % 2 == 0) ? prod : -prod;
  }
  return (n % 2 == 0) ? total : -total;
}

cplx hafnian(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ArgumentError("hafnian needs a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n % 2 != 0) throw ArgumentError("hafnian needs an even dimension");
  if (n > kMaxHafnianSize) {
    std::ostringstream msg;
    msg << "hafnian size " << n << " exceeds cap " << kMaxHafnianSize;
    throw SizeError(msg.str());
  }
  if (n == 0) return 1.0;
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) throw ArgumentError("hafnian input is not symmetric");

  // haf(mask) pairs the lowest vertex of mask with every other vertex in it.
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<cplx> memo(std::size_t{1} << n, cplx(0.0));
  std::vector<char> done(std::size_t{1} << n, 0);
  memo[0] = 1.0;
  done[0] = 1;
  auto solve = [&](auto&& self, std::uint32_t mask) -> cplx {
    if (done[mask]) return memo[mask];
    const int i = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(std::uint32_t{1} << i);
    cplx acc = 0.0;
    for (std::uint32_t r = rest; r; r &= r - 1) {
      const int j = std::countr_zero(r);
      if (m(i, j) == cplx(0.0)) continue;
      acc += m(i, j) * self(self, rest & ~(std::uint32_t{1} << j));
    }
    memo[mask] = acc;
    done[mask] = 1;
    return acc;
  };
  return solve(solve, full);
}

double torontonian(const CMatrix& sigma_q) {
  if (sigma_q.rows() != sigma_q.cols() || sigma_q.rows() % 2 != 0) {
    throw ArgumentError("torontonian needs a 2m x 2m Q-covariance");
  }
  const int m = static_cast<int>(sigma_q.rows() / 2);
  if (m > 20) throw SizeError("torontonian limited to 20 modes");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma_q, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 1e-12) {
    throw ArgumentError("torontonian input is not positive definite");
  }
  double total = 0.0;
  std::vector<int> idx;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    idx.clear();
    for (int i = 0; i < m; ++i) {
      if (mask & (std::uint32_t{1} << i)) idx.push_back(i);
    }
    const int k = static_cast<int>(idx.size());
    double det = 1.0;
    if (k > 0) {
      std::vector<int> full(2 * k);
      for (int i = 0; i < k; ++i) {
        full[i] = idx[i];
        full[i + k] = idx[i] + m;
      }
      det = CMatrix(sigma_q(full, full)).determinant().real();
    }
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    total += sign / std::sqrt(det);
  }
  return total;
}

DilationResult unitary_dilation(const CMatrix& t, double epsilon) {
  if (!(epsilon > 0.0)) throw ArgumentError("dilation epsilon must be positive");
  if (t.rows() != t.cols()) throw ArgumentError("dilation needs a square matrix");
  const Eigen::Index n = t.rows();
  Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericError("SVD failed");
  const RVector sv = svd.singularValues();
  DilationResult out;
  out.epsilon = epsilon;
  out.sigma_max_eps = (n > 0 ? sv.maxCoeff() : 0.0) + epsilon;
  RVector comp(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = sv(i) / out.sigma_max_eps;
    comp(i) = std::sqrt(std::max(0.0, 1.0 - d * d));
  }
  // With T = R D V, the blocks T / sigma and R sqrt(1 - D^2) V share R and V.
  const CMatrix a = t / out.sigma_max_eps;
  const CMatrix b =
      svd.matrixU() * comp.asDiagonal() * svd.matrixV().adjoint();
  out.u_prime.resize(2 * n, 2 * n);
  out.u_prime.topLeftCorner(n, n) = a;
  out.u_prime.topRightCorner(n, n) = b;
  out.u_prime.bottomLeftCorner(n, n) = b;
  out.u_prime.bottomRightCorner(n, n) = -a;
  return out;
}

CMatrix givens_rotation(int n, int r, int s, double theta, double phi) {
  if (r == s) throw ArgumentError("givens rotation needs distinct modes");
  if (r < 0 || s < 0 || r >= n || s >= n) {
    throw ArgumentError("givens rotation index out of range");
  }
  CMatrix g = CMatrix::Identity(n, n);
  const cplx e = std::polar(1.0, phi);
  g(r, r) = e * std::cos(theta);
  g(r, s) = -std::sin(theta);
  g(s, r) = e * std::sin(theta);
  g(s, s) = std::cos(theta);
  return g;
}

double unitarity_deviation(const CMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace tfgbs
