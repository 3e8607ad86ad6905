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

#ifndef TFGBS_GAUSSIAN_STATE_HPP_
#define TFGBS_GAUSSIAN_STATE_HPP_

#include "tfgbs/types.hpp"

namespace tfgbs {

// Gaussian state in the complex (a_1..a_N, a_1^dag..a_N^dag) ordering.
// Vacuum has sigma = I/2 and disp = 0.
struct GaussianState {
  int n_modes = 0;
  CMatrix sigma;
  CVector disp;

  CMatrix q_covariance() const;
};

struct LossChannelSpec {
  double transmissivity = 1.0;
  double thermal_mean = 0.0;
};

GaussianState vacuum(int n_modes);

GaussianState apply_two_mode_squeeze(const GaussianState& state, int mode_a,
                                     int mode_b, cplx xi);

// u must be unitary to 1e-10; modes transform as a -> u a.
GaussianState apply_interferometer(const GaussianState& state,
                                   const CMatrix& u);

// Single-mode attenuator coupling the mode to a thermal bath with mean
// photon number spec.thermal_mean.
GaussianState apply_thermal_loss(const GaussianState& state, int mode,
                                 const LossChannelSpec& spec);

// Classical additive noise: adds n_mean thermal photons to the mode.
GaussianState apply_additive_noise(const GaussianState& state, int mode,
                                   double n_mean);

GaussianState apply_displacement(const GaussianState& state, int mode,
                                 cplx alpha);

GaussianState reduce(const GaussianState& state, const IndexSet& keep);

double vacuum_probability(const GaussianState& state, const IndexSet& subset);

// Probability that every mode in clicked fires and every mode in dark stays
// silent; remaining modes are traced out.
double threshold_click_probability(const GaussianState& state,
                                   const IndexSet& clicked,
                                   const IndexSet& dark);

RVector mean_photon_numbers(const GaussianState& state);

// Smallest eigenvalue of the Q-covariance.
double min_q_eigenvalue(const GaussianState& state);

// Throws NumericError if sigma is not Hermitian or the Q-covariance is not
// positive definite (smallest eigenvalue below 1e-12).
void check_physical(const GaussianState& state);

}  // namespace tfgbs

#endif  // TFGBS_GAUSSIAN_STATE_HPP_
