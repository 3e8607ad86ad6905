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

#ifndef TFGBS_MATRIX_KERNELS_HPP_
#define TFGBS_MATRIX_KERNELS_HPP_

#include "tfgbs/types.hpp"

namespace tfgbs {

inline constexpr int kMaxPermanentSize = 14;
inline constexpr int kMaxHafnianSize = 16;

// Ryser formula with Gray-code subset ordering.
cplx permanent(const CMatrix& m);

// Perfect-matching recursion with memoized submasks.
cplx hafnian(const CMatrix& m);

// All-modes-click probability for a zero-mean state with the given
// Q-covariance (2m x 2m, (a, a^dag) ordering).
double torontonian(const CMatrix& sigma_q);

struct DilationResult {
  CMatrix u_prime;
  double sigma_max_eps = 0.0;
  double epsilon = 0.0;
};

// Embeds T / (sigma_max + epsilon) as the top-left block of a 2N x 2N unitary.
DilationResult unitary_dilation(const CMatrix& t, double epsilon);

// Identity except the (r, s) block
//   [[e^{i phi} cos(theta), -sin(theta)], [e^{i phi} sin(theta), cos(theta)]].
CMatrix givens_rotation(int n, int r, int s, double theta, double phi);

// Largest entrywise deviation of u^dag u from the identity.
double unitarity_deviation(const CMatrix& u);

}  // namespace tfgbs

#endif  // TFGBS_MATRIX_KERNELS_HPP_
