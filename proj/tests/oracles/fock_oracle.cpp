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
#include "oracles/fock_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace tfgbs::oracle {
namespace {

constexpr int kTms = 0;
constexpr int kThermal = 1;
constexpr int kCoherent = 2;

double log_factorial(int n) { return std::lgamma(n + 1.0); }

void enumerate(int modes, int cutoff, std::vector<std::vector<int>>& out) {
  for (int total = 0; total <= cutoff; ++total) {
    std::vector<int> occ(modes, 0);
    // All compositions of total into modes parts, in lexicographic order.
    auto rec = [&](auto&& self, int mode, int left) -> void {
      if (mode == modes - 1) {
        occ[mode] = left;
        out.push_back(occ);
        return;
      }
      for (int k = left; k >= 0; --k) {
        occ[mode] = k;
        self(self, mode + 1, left - k);
      }
    };
    rec(rec, 0, total);
  }
}

}  // namespace

FockDensity::FockDensity(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  enumerate(modes, cutoff, basis_);
  std::size_t table = 1;
  for (int m = 0; m < modes; ++m) table *= static_cast<std::size_t>(cutoff + 1);
  lookup_.assign(table, -1);
  for (int i = 0; i < dim(); ++i) {
    std::size_t key = 0;
    for (int m = 0; m < modes; ++m) key = key * (cutoff + 1) + basis_[i][m];
    lookup_[key] = i;
  }
  rho_ = CMatrix::Zero(dim(), dim());
}

int FockDensity::index_of(const std::vector<int>& occ) const {
  std::size_t key = 0;
  int total = 0;
  for (int m = 0; m < modes_; ++m) {
    if (occ[m] < 0) return -1;
    total += occ[m];
    if (occ[m] > cutoff_) return -1;
    key = key * (cutoff_ + 1) + occ[m];
  }
  if (total > cutoff_) return -1;
  return lookup_[key];
}

double FockDensity::trace() const { return rho_.trace().real(); }

double FockDensity::mean_photons(int mode) const {
  double s = 0.0;
  for (int i = 0; i < dim(); ++i) s += basis_[i][mode] * rho_(i, i).real();
  return s;
}

double FockDensity::click_probability(const std::vector<int>& modes,
                                      const std::vector<bool>& clicked) const {
  double s = 0.0;
  for (int i = 0; i < dim(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < modes.size() && match; ++k) {
      match = (basis_[i][modes[k]] > 0) == clicked[k];
    }
    if (match) s += rho_(i, i).real();
  }
  return s;
}

FockBuilder& FockBuilder::two_mode_squeezed(int a, int b, cplx xi) {
  factors_.push_back({{a, b}, kTms, xi, 0.0});
  return *this;
}

FockBuilder& FockBuilder::thermal(int mode, double nbar) {
  factors_.push_back({{mode}, kThermal, 0.0, nbar});
  return *this;
}

FockBuilder& FockBuilder::coherent(int mode, cplx alpha) {
  factors_.push_back({{mode}, kCoherent, alpha, 0.0});
  return *this;
}

FockDensity FockBuilder::build() const {
  FockDensity st(modes_, cutoff_);
  std::vector<bool> owned(modes_, false);
  for (const auto& f : factors_) {
    for (int m : f.modes) {
      if (owned[m]) throw std::logic_error("mode used by two factors");
      owned[m] = true;
    }
  }
  // Amplitude of a pure factor for its local occupations.
  auto amplitude = [](const Factor& f, const std::vector<int>& occ) -> cplx {
    if (f.kind == kTms) {
      const int n = occ[f.modes[0]];
      if (occ[f.modes[1]] != n) return 0.0;
      const double r = std::abs(f.param);
      const cplx c = std::polar(std::tanh(r), std::arg(f.param));
      return std::pow(c, n) / std::cosh(r);
    }
    const int n = occ[f.modes[0]];
    const double mag2 = std::norm(f.param);
    return std::exp(-0.5 * mag2 - 0.5 * log_factorial(n)) *
           (n == 0 ? cplx(1.0) : std::pow(f.param, n));
  };
  for (int i = 0; i < st.dim(); ++i) {
    const auto& n = st.occupation(i);
    bool vac_ok = true;
    for (int m = 0; m < modes_; ++m) vac_ok = vac_ok && (owned[m] || n[m] == 0);
    if (!vac_ok) continue;
    for (int j = 0; j < st.dim(); ++j) {
      const auto& mocc = st.occupation(j);
      bool ok = true;
      for (int m = 0; m < modes_; ++m) ok = ok && (owned[m] || mocc[m] == 0);
      if (!ok) continue;
      cplx v = 1.0;
      for (const auto& f : factors_) {
        if (f.kind == kThermal) {
          const int a = n[f.modes[0]];
          if (a != mocc[f.modes[0]]) {
            v = 0.0;
            break;
          }
          const double nb = f.real_param;
          v *= std::pow(nb, a) / std::pow(1.0 + nb, a + 1);
        } else {
          v *= amplitude(f, n) * std::conj(amplitude(f, mocc));
        }
        if (v == cplx(0.0)) break;
      }
      st.rho()(i, j) = v;
    }
  }
  return st;
}

void apply_passive_unitary(FockDensity& state, const CMatrix& u) {
  const int d = state.dim();
  const int modes = state.modes();
  if (u.rows() != modes || u.cols() != modes) {
    throw std::invalid_argument("unitary size mismatch");
  }
  CMatrix w = CMatrix::Zero(d, d);
  std::vector<int> occ(modes);
  for (int col = 0; col < d; ++col) {
    const auto& n = state.occupation(col);
    CVector v = CVector::Zero(d);
    v(state.index_of(std::vector<int>(modes, 0))) = 1.0;
    double norm = 0.0;
    for (int i = 0; i < modes; ++i) {
      for (int rep = 0; rep < n[i]; ++rep) {
        CVector next = CVector::Zero(d);
        for (int k = 0; k < d; ++k) {
          if (v(k) == cplx(0.0)) continue;
          occ = state.occupation(k);
          for (int j = 0; j < modes; ++j) {
            if (u(j, i) == cplx(0.0)) continue;
            ++occ[j];
            const int idx = state.index_of(occ);
            if (idx >= 0) next(idx) += u(j, i) * std::sqrt(double(occ[j])) * v(k);
            --occ[j];
          }
        }
        v = next;
      }
      norm += log_factorial(n[i]);
    }
    w.col(col) = v * std::exp(-0.5 * norm);
  }
  // Photon number is conserved, so W is block diagonal in the total-number
  // ordering; multiply block by block.
  std::vector<int> start;
  int prev = -1;
  for (int i = 0; i < d; ++i) {
    int t = 0;
    for (int x : state.occupation(i)) t += x;
    if (t != prev) {
      start.push_back(i);
      prev = t;
    }
  }
  start.push_back(d);
  CMatrix out = CMatrix::Zero(d, d);
  const CMatrix& rho = state.rho();
  for (std::size_t a = 0; a + 1 < start.size(); ++a) {
    const int ra = start[a], na = start[a + 1] - start[a];
    const CMatrix wa = w.block(ra, ra, na, na);
    for (std::size_t b = 0; b + 1 < start.size(); ++b) {
      const int rb = start[b], nb = start[b + 1] - start[b];
      const CMatrix wb = w.block(rb, rb, nb, nb);
      out.block(ra, rb, na, nb) = wa * rho.block(ra, rb, na, nb) * wb.adjoint();
    }
  }
  state.rho() = out;
}

void apply_pure_loss(FockDensity& state, int mode, double eta) {
  const int d = state.dim();
  CMatrix out = CMatrix::Zero(d, d);
  auto coeff = [&](int n, int k) {
    if (k > n) return 0.0;
    const double logc = log_factorial(n) - log_factorial(k) - log_factorial(n - k);
    const double a = (n - k) > 0 ? (n - k) * std::log(eta) : 0.0;
    const double b = k > 0 ? k * std::log1p(-eta) : 0.0;
    if ((eta == 0.0 && n - k > 0) || (eta == 1.0 && k > 0)) return 0.0;
    return std::exp(0.5 * (logc + a + b));
  };
  std::vector<int> ni, nj;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const cplx v = state.rho()(i, j);
      if (v == cplx(0.0)) continue;
      ni = state.occupation(i);
      nj = state.occupation(j);
      const int top = std::min(ni[mode], nj[mode]);
      for (int k = 0; k <= top; ++k) {
        const double c = coeff(ni[mode], k) * coeff(nj[mode], k);
        if (c == 0.0) continue;
        ni[mode] -= k;
        nj[mode] -= k;
        out(state.index_of(ni), state.index_of(nj)) += c * v;
        ni[mode] += k;
        nj[mode] += k;
      }
    }
  }
  state.rho() = out;
}

FockDensity apply_thermal_loss_dilated(const FockDensity& state, int mode,
                                       double eta, double nbar) {
  const int modes = state.modes();
  const int env = modes;
  FockDensity big(modes + 1, state.cutoff());
  std::vector<int> occ_i, occ_j;
  for (int i = 0; i < big.dim(); ++i) {
    const auto& bi = big.occupation(i);
    occ_i.assign(bi.begin(), bi.end() - 1);
    const int si = state.index_of(occ_i);
    if (si < 0) continue;
    for (int j = 0; j < big.dim(); ++j) {
      const auto& bj = big.occupation(j);
      if (bj[env] != bi[env]) continue;
      occ_j.assign(bj.begin(), bj.end() - 1);
      const int sj = state.index_of(occ_j);
      if (sj < 0) continue;
      const int k = bi[env];
      big.rho()(i, j) =
          state.rho()(si, sj) * std::pow(nbar, k) / std::pow(1.0 + nbar, k + 1);
    }
  }
  CMatrix u = CMatrix::Identity(modes + 1, modes + 1);
  const double t = std::sqrt(eta), r = std::sqrt(1.0 - eta);
  u(mode, mode) = t;
  u(mode, env) = -r;
  u(env, mode) = r;
  u(env, env) = t;
  apply_passive_unitary(big, u);
  FockDensity out(modes, state.cutoff());
  for (int i = 0; i < big.dim(); ++i) {
    const auto& bi = big.occupation(i);
    occ_i.assign(bi.begin(), bi.end() - 1);
    const int si = out.index_of(occ_i);
    for (int j = 0; j < big.dim(); ++j) {
      const auto& bj = big.occupation(j);
      if (bj[env] != bi[env]) continue;
      occ_j.assign(bj.begin(), bj.end() - 1);
      out.rho()(si, out.index_of(occ_j)) += big.rho()(i, j);
    }
  }
  return out;
}

}  // namespace tfgbs::oracle
