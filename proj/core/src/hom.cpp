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
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "tfgbs/errors.hpp"
#include "tfgbs/gaussian_state.hpp"
#include "tfgbs/matrix_kernels.hpp"
#include "tfgbs/simulator.hpp"

namespace tfgbs {
namespace {

// Modes: signal/idler of the early and late pairs, then the long-arm outputs
// of the two signal splitters.
constexpr int kSigE = 0;
constexpr int kIdlE = 1;
constexpr int kSigL = 2;
constexpr int kIdlL = 3;
constexpr int kSigELong = 4;
constexpr int kSigLLong = 5;
constexpr int kHomModes = 6;

CMatrix balanced_splitter(int a, int b) {
  return givens_rotation(kHomModes, a, b, std::numbers::pi / 4.0, 0.0);
}

}  // namespace

HomResult hom_simulate(const HomSimConfig& config) {
  if (!(config.xi_abs > 0.0)) throw ArgumentError("xi_abs must be positive");
  if (!(config.loss_db_signal >= 0.0) || !(config.loss_db_idler >= 0.0)) {
    throw ArgumentError("losses must be non-negative");
  }
  if (!(config.thermal_coeff >= 0.0)) {
    throw ArgumentError("thermal_coeff must be non-negative");
  }
  const double n_th = config.thermal_coeff * config.xi_abs;
  GaussianState st = vacuum(kHomModes);
  st = apply_two_mode_squeeze(st, kSigE, kIdlE, config.xi_abs);
  st = apply_two_mode_squeeze(st, kSigL, kIdlL, config.xi_abs);
  for (int m : {kSigE, kSigL, kIdlE, kIdlL}) {
    const bool signal = (m == kSigE || m == kSigL);
    const double eta =
        db_to_transmissivity(signal ? config.loss_db_signal : config.loss_db_idler);
    if (config.thermal == ThermalInjection::kSourceNoise) {
      if (n_th > 0.0) st = apply_additive_noise(st, m, n_th);
      st = apply_thermal_loss(st, m, {eta, 0.0});
    } else {
      st = apply_thermal_loss(st, m, {eta, n_th});
    }
  }
  // Unbalanced interferometer: each signal pulse splits into short and long
  // arms; the early long arm meets the late short arm.
  st = apply_interferometer(st, balanced_splitter(kSigE, kSigELong));
  st = apply_interferometer(st, balanced_splitter(kSigL, kSigLLong));

  int a = kSigELong, b = kSigL;
  int c = kSigE, d = kSigLLong;
  if (config.swap_arms) {
    std::swap(a, c);
    std::swap(b, d);
  }

  HomResult out;
  const GaussianState interfered =
      apply_interferometer(st, balanced_splitter(a, b));
  out.n0 = threshold_click_probability(interfered, {kIdlE, kIdlL, a, b}, {});

  GaussianState reference = st;
  if (config.reference == HomReference::kHalfLoss) {
    reference = apply_thermal_loss(reference, c, {0.5, 0.0});
    reference = apply_thermal_loss(reference, d, {0.5, 0.0});
  }
  out.n_td = threshold_click_probability(reference, {kIdlE, kIdlL, c, d}, {});
  if (!(out.n_td > 0.0)) throw NumericError("no heralded signal");
  out.visibility = 1.0 - out.n0 / out.n_td;
  return out;
}

double hom_visibility(const HomSimConfig& config) {
  return hom_simulate(config).visibility;
}

double hom_model(const HomFitParams& p, double delta_tau) {
  return p.b * (1.0 - p.v * std::exp(-std::abs(delta_tau) / p.tau_c));
}

HomFitResult fit_hom_dip(const std::vector<HomDataPoint>& data,
                         const HomFitParams& initial, int max_iterations) {
  if (data.size() < 5) throw ArgumentError("HOM fit needs at least 5 points");
  bool neg = false, pos = false;
  for (const auto& pt : data) {
    neg = neg || pt.delta_tau < 0.0;
    pos = pos || pt.delta_tau > 0.0;
  }
  if (!neg || !pos) {
    throw ArgumentError("HOM fit data must span both signs of the delay");
  }
  if (!(initial.tau_c > 0.0)) throw ArgumentError("initial tau_c must be positive");

  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  auto residuals = [&](const Eigen::Vector3d& p) {
    Eigen::VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      r(i) = data[i].counts - hom_model({p(0), p(1), p(2)}, data[i].delta_tau);
    }
    return r;
  };
  auto jacobian = [&](const Eigen::Vector3d& p) {
    Eigen::MatrixXd j(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = std::abs(data[i].delta_tau);
      const double e = std::exp(-t / p(2));
      j(i, 0) = 1.0 - p(1) * e;
      j(i, 1) = -p(0) * e;
      j(i, 2) = -p(0) * p(1) * e * t / (p(2) * p(2));
    }
    return j;
  };

  Eigen::Vector3d p(initial.b, initial.v, initial.tau_c);
  Eigen::VectorXd r = residuals(p);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  int iter = 0;
  bool converged = false;
  for (; iter < max_iterations && !converged; ++iter) {
    const Eigen::MatrixXd j = jacobian(p);
    const Eigen::Matrix3d jtj = j.transpose() * j;
    const Eigen::Vector3d g = j.transpose() * r;
    const double scale = jtj.diagonal().maxCoeff();
    bool accepted = false;
    while (!accepted) {
      Eigen::Matrix3d a = jtj;
      for (int k = 0; k < 3; ++k) {
        a(k, k) += lambda * std::max(jtj(k, k), 1e-12 * scale);
      }
      const Eigen::Vector3d step = a.ldlt().solve(g);
      const Eigen::Vector3d trial = p + step;
      if (trial(2) > 0.0) {
        const Eigen::VectorXd rt = residuals(trial);
        const double ct = rt.squaredNorm();
        if (std::isfinite(ct) && ct <= cost) {
          const double rel_step =
              (step.array().abs() / (p.array().abs() + 1e-12)).maxCoeff();
          const double rel_cost = (cost - ct) / std::max(cost, 1e-300);
          p = trial;
          r = rt;
          cost = ct;
          lambda = std::max(lambda / 10.0, 1e-12);
          accepted = true;
          if (rel_step < 1e-13 || rel_cost < 1e-15) converged = true;
          continue;
        }
      }
      lambda *= 10.0;
      if (lambda > 1e16) {
        // No direction lowers the cost any further.
        converged = true;
        break;
      }
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "HOM fit did not converge after " << iter
        << " iterations (residual norm " << std::sqrt(cost) << ")";
    throw NumericError(msg.str());
  }

  HomFitResult out;
  out.params = {p(0), p(1), p(2)};
  out.residual_norm = std::sqrt(cost);
  out.iterations = iter;
  const Eigen::MatrixXd j = jacobian(p);
  const Eigen::Matrix3d jtj = j.transpose() * j;
  const double dof = static_cast<double>(n - 3);
  const double s2 = dof > 0 ? cost / dof : 0.0;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(jtj);
  if (lu.isInvertible()) {
    const Eigen::Matrix3d cov = s2 * lu.inverse();
    out.std_errors = {std::sqrt(std::max(cov(0, 0), 0.0)),
                      std::sqrt(std::max(cov(1, 1), 0.0)),
                      std::sqrt(std::max(cov(2, 2), 0.0))};
  } else {
    const double inf = std::numeric_limits<double>::infinity();
    out.std_errors = {inf, inf, inf};
  }
  return out;
}

}  // namespace tfgbs
