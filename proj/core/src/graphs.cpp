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
#include "tfgbs/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "tfgbs/errors.hpp"

namespace tfgbs {
namespace {

using Perm3 = std::array<int, 3>;

int map_vertex(int v, const Perm3& pi) {
  return (v / kFreqBins) * kFreqBins + pi[v % kFreqBins];
}

void check_subset(const IndexSet& s, const char* side) {
  std::set<int> seen;
  for (int v : s) {
    if (v < 0 || v >= kModesPerSpecies) {
      throw ArgumentError(std::string(side) + " vertex out of range");
    }
    if (!seen.insert(v).second) {
      throw ArgumentError(std::string(side) + " vertex repeated");
    }
  }
}

int count_inside(const std::array<int, 2>& modes, const IndexSet& set) {
  int n = 0;
  for (int m : modes) {
    if (std::find(set.begin(), set.end(), m) != set.end()) ++n;
  }
  return n;
}

std::vector<IndexSet> combinations(int n, int k) {
  std::vector<IndexSet> out;
  IndexSet cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  if (k > n || k <= 0) return out;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

struct Placement {
  IndexSet signal;
  IndexSet idler;
  VertexBijection witness;
  auto key() const { return std::make_pair(signal, idler); }
};

// Image of (signal, idler) under the frequency permutations, with the
// bijection from the original vertex positions to the image positions.
Placement apply_symmetry(const IndexSet& s, const IndexSet& i, const Perm3& ps,
                         const Perm3& pi) {
  Placement p;
  for (int v : s) p.signal.push_back(map_vertex(v, ps));
  for (int v : i) p.idler.push_back(map_vertex(v, pi));
  std::sort(p.signal.begin(), p.signal.end());
  std::sort(p.idler.begin(), p.idler.end());
  for (int v : s) {
    const int img = map_vertex(v, ps);
    p.witness.signal.push_back(static_cast<int>(
        std::find(p.signal.begin(), p.signal.end(), img) - p.signal.begin()));
  }
  for (int v : i) {
    const int img = map_vertex(v, pi);
    p.witness.idler.push_back(static_cast<int>(
        std::find(p.idler.begin(), p.idler.end(), img) - p.idler.begin()));
  }
  return p;
}

}  // namespace

CMatrix BipartiteGraph::adjacency() const {
  const Eigen::Index ns = weights.rows();
  const Eigen::Index ni = weights.cols();
  CMatrix a = CMatrix::Zero(ns + ni, ns + ni);
  a.topRightCorner(ns, ni) = weights;
  a.bottomLeftCorner(ni, ns) = weights.transpose();
  return a;
}

BipartiteGraph graph_from_c(const CMatrix& c, const IndexSet& signal_subset,
                            const IndexSet& idler_subset) {
  if (signal_subset.empty() || idler_subset.empty()) {
    throw ArgumentError("graph needs non-empty vertex sets");
  }
  check_subset(signal_subset, "signal");
  check_subset(idler_subset, "idler");
  BipartiteGraph g;
  g.signal_vertices = signal_subset;
  g.idler_vertices = idler_subset;
  g.weights = c(signal_subset, idler_subset);
  return g;
}

BipartiteGraph graph_from_config(const ExperimentConfig& config,
                                 const IndexSet& signal_subset,
                                 const IndexSet& idler_subset) {
  return graph_from_c(c_matrix(config), signal_subset, idler_subset);
}

FeatureVector orbit_counts(const std::vector<SampleRecord>& samples,
                           const BipartiteGraph& graph,
                           OrbitSemantics semantics) {
  FeatureVector f;
  for (const auto& rec : samples) {
    const int ns = count_inside(rec.pattern.signal, graph.signal_vertices);
    const int ni = count_inside(rec.pattern.idler, graph.idler_vertices);
    const bool outside_quiet = (ns == 2 && ni == 2);
    const bool strict = semantics == OrbitSemantics::kStrictVacuum;
    if (ns == 1 && ni == 1 && !strict) {
      ++f.n_o2;
    } else if (ns == 2 && ni == 2 && (!strict || outside_quiet)) {
      ++f.n_o4;
    } else {
      ++f.n_other;
    }
  }
  return f;
}

OrbitProbabilities theoretical_orbit_probabilities(const BipartiteGraph& graph,
                                                   const Distribution& dist) {
  if (graph.signal_vertices.size() > kModesPerSpecies ||
      graph.idler_vertices.size() > kModesPerSpecies) {
    throw ArgumentError("graph sides are limited to 6 vertices");
  }
  OrbitProbabilities out;
  for (std::size_t k = 0; k < dist.patterns.size(); ++k) {
    const int ns = count_inside(dist.patterns[k].signal, graph.signal_vertices);
    const int ni = count_inside(dist.patterns[k].idler, graph.idler_vertices);
    if (ns == 1 && ni == 1) out.p_o2 += dist.probs[k];
    if (ns == 2 && ni == 2) out.p_o4 += dist.probs[k];
  }
  return out;
}

OrbitProbabilities theoretical_orbit_probabilities(
    const BipartiteGraph& graph, const ExperimentConfig& config) {
  return theoretical_orbit_probabilities(graph, full_distribution(config));
}

std::optional<VertexBijection> are_isomorphic(const BipartiteGraph& g1,
                                              const BipartiteGraph& g2,
                                              double tol) {
  const int ns = static_cast<int>(g1.weights.rows());
  const int ni = static_cast<int>(g1.weights.cols());
  if (g2.weights.rows() != ns || g2.weights.cols() != ni) return std::nullopt;
  std::vector<int> sp(ns);
  std::iota(sp.begin(), sp.end(), 0);
  do {
    // Columns are matched greedily: two target columns that both fit are
    // identical, so the choice between them never matters.
    std::vector<int> ip(ni, -1);
    std::vector<bool> used(ni, false);
    bool ok = true;
    for (int j = 0; j < ni && ok; ++j) {
      ok = false;
      for (int k = 0; k < ni; ++k) {
        if (used[k]) continue;
        bool match = true;
        for (int i = 0; i < ns && match; ++i) {
          match = std::abs(g2.weights(sp[i], k) - g1.weights(i, j)) <= tol;
        }
        if (match) {
          used[k] = true;
          ip[j] = k;
          ok = true;
          break;
        }
      }
    }
    if (ok) return VertexBijection{sp, ip};
  } while (std::next_permutation(sp.begin(), sp.end()));
  return std::nullopt;
}

CMatrix permuted_weights(const BipartiteGraph& g, const VertexBijection& map) {
  CMatrix out(map.signal.size(), map.idler.size());
  for (std::size_t i = 0; i < map.signal.size(); ++i) {
    for (std::size_t j = 0; j < map.idler.size(); ++j) {
      out(i, j) = g.weights(map.signal[i], map.idler[j]);
    }
  }
  return out;
}

std::vector<GraphFamily> make_graph_families(const ExperimentConfig& config,
                                             int n_vertices, int count) {
  if (n_vertices < 2 || n_vertices > 2 * kModesPerSpecies) {
    throw ArgumentError("family vertex count must lie in [2, 12]");
  }
  if (count < 1) throw ArgumentError("family count must be positive");
  const CMatrix c = c_matrix(config);
  const Distribution dist = full_distribution(config);
  const double scale = std::max(c.cwiseAbs().maxCoeff(), 1e-300);

  std::vector<Perm3> perms;
  Perm3 base{0, 1, 2};
  do perms.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  std::vector<std::pair<Perm3, Perm3>> group;
  for (const auto& ps : perms) {
    for (const auto& pi : perms) {
      bool invariant = true;
      for (int q = 0; q < kModesPerSpecies && invariant; ++q) {
        for (int p = 0; p < kModesPerSpecies && invariant; ++p) {
          invariant = std::abs(c(map_vertex(q, ps), map_vertex(p, pi)) - c(q, p)) <=
                      1e-12 * scale;
        }
      }
      if (invariant) group.emplace_back(ps, pi);
    }
  }

  std::vector<std::pair<int, int>> splits;
  for (int a = 1; a < n_vertices; ++a) {
    const int b = n_vertices - a;
    if (a <= kModesPerSpecies && b <= kModesPerSpecies) splits.emplace_back(a, b);
  }
  std::stable_sort(splits.begin(), splits.end(), [](auto l, auto r) {
    return std::abs(l.first - l.second) < std::abs(r.first - r.second);
  });

  std::vector<GraphFamily> candidates;
  std::set<std::pair<IndexSet, IndexSet>> seen;
  for (const auto& [a, b] : splits) {
    const auto sig_sets = combinations(kModesPerSpecies, a);
    const auto idl_sets = combinations(kModesPerSpecies, b);
    for (const auto& s : sig_sets) {
      for (const auto& i : idl_sets) {
        if (seen.count({s, i})) continue;
        std::map<std::pair<IndexSet, IndexSet>, VertexBijection> orbit;
        for (const auto& [ps, pi] : group) {
          Placement p = apply_symmetry(s, i, ps, pi);
          orbit.emplace(p.key(), p.witness);
        }
        for (const auto& kv : orbit) seen.insert(kv.first);
        GraphFamily fam;
        // Member 0 is (s, i) itself: the lexicographically first unseen pair
        // is the smallest element of its orbit.
        for (const auto& [key, forward] : orbit) {
          fam.members.push_back(graph_from_c(c, key.first, key.second));
          fam.witness_maps.push_back(forward);
        }
        bool duplicate = false;
        for (const auto& other : candidates) {
          if (other.members[0].weights.rows() == a &&
              other.members[0].weights.cols() == b &&
              are_isomorphic(other.members[0], fam.members[0])) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) candidates.push_back(std::move(fam));
      }
    }
  }
  if (static_cast<int>(candidates.size()) < count) {
    throw ArgumentError("not enough non-isomorphic families for the request");
  }

  std::vector<OrbitProbabilities> probs;
  for (const auto& f : candidates) {
    probs.push_back(theoretical_orbit_probabilities(f.members[0], dist));
  }
  auto dist2 = [&](int x, int y) {
    return std::hypot(probs[x].p_o2 - probs[y].p_o2, probs[x].p_o4 - probs[y].p_o4);
  };
  std::vector<int> chosen = {0};
  std::vector<bool> taken(candidates.size(), false);
  taken[0] = true;
  while (static_cast<int>(chosen.size()) < count) {
    int best = -1;
    double best_d = -1.0;
    for (int k = 0; k < static_cast<int>(candidates.size()); ++k) {
      if (taken[k]) continue;
      double d = INFINITY;
      for (int j : chosen) d = std::min(d, dist2(k, j));
      if (d > best_d) {
        best_d = d;
        best = k;
      }
    }
    chosen.push_back(best);
    taken[best] = true;
  }
  std::vector<GraphFamily> out;
  for (int k : chosen) out.push_back(candidates[k]);
  return out;
}

double default_cluster_threshold(std::uint64_t n_samples) {
  if (n_samples == 0) throw ArgumentError("sample count must be positive");
  return 1.5 / std::sqrt(static_cast<double>(n_samples));
}

std::vector<int> cluster_feature_vectors(const std::vector<FeatureVector>& vectors,
                                         const ClusterCriterion& criterion) {
  const std::size_t n = vectors.size();
  if (n < 2) throw ArgumentError("clustering needs at least two vectors");
  if (criterion.k < 0 || criterion.k > static_cast<int>(n)) {
    throw ArgumentError("cluster count out of range");
  }
  std::vector<std::array<double, 2>> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(vectors[i].total());
    pts[i] = t > 0 ? std::array<double, 2>{vectors[i].n_o2 / t, vectors[i].n_o4 / t}
                   : std::array<double, 2>{0.0, 0.0};
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  struct Edge {
    double d;
    std::size_t i, j;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back({std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]), i, j});
    }
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& a, const Edge& b) { return a.d < b.d; });
  std::size_t clusters = n;
  for (const auto& e : edges) {
    if (criterion.k > 0) {
      if (clusters <= static_cast<std::size_t>(criterion.k)) break;
    } else if (e.d > criterion.threshold) {
      break;
    }
    const std::size_t a = find(e.i), b = find(e.j);
    if (a == b) continue;
    parent[std::max(a, b)] = std::min(a, b);
    --clusters;
  }
  std::vector<int> labels(n);
  std::map<std::size_t, int> ids;
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = find(i);
    auto it = ids.find(root);
    if (it == ids.end()) it = ids.emplace(root, static_cast<int>(ids.size())).first;
    labels[i] = it->second;
  }
  return labels;
}

int recovered_families(const std::vector<int>& labels,
                       const std::vector<int>& family_of) {
  if (labels.size() != family_of.size()) {
    throw ArgumentError("labels and family ids differ in length");
  }
  std::map<int, std::set<int>> per_family;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    per_family[family_of[k]].insert(labels[k]);
  }
  std::set<int> distinct;
  for (const auto& [fam, ls] : per_family) {
    if (ls.size() == 1) distinct.insert(*ls.begin());
  }
  return static_cast<int>(distinct.size());
}

}  // namespace tfgbs
