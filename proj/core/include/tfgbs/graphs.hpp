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
#ifndef TFGBS_GRAPHS_HPP_
#define TFGBS_GRAPHS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "tfgbs/experiment.hpp"
#include "tfgbs/validation.hpp"

namespace tfgbs {

struct BipartiteGraph {
  IndexSet signal_vertices;
  IndexSet idler_vertices;
  CMatrix weights;

  // [[0, W], [W^T, 0]].
  CMatrix adjacency() const;
};

// g2.weights(signal[i], idler[j]) == g1.weights(i, j).
struct VertexBijection {
  std::vector<int> signal;
  std::vector<int> idler;
};

struct GraphFamily {
  std::vector<BipartiteGraph> members;
  // witness_maps[k] sends member k onto member 0.
  std::vector<VertexBijection> witness_maps;
};

struct FeatureVector {
  std::uint64_t n_o2 = 0;
  std::uint64_t n_o4 = 0;
  std::uint64_t n_other = 0;

  std::uint64_t total() const { return n_o2 + n_o4 + n_other; }
};

enum class OrbitSemantics {
  kTraceOut,       // clicks outside the graph are ignored
  kStrictVacuum,   // clicks outside the graph disqualify the sample
};

struct OrbitProbabilities {
  double p_o2 = 0.0;
  double p_o4 = 0.0;
};

BipartiteGraph graph_from_config(const ExperimentConfig& config,
                                 const IndexSet& signal_subset,
                                 const IndexSet& idler_subset);
BipartiteGraph graph_from_c(const CMatrix& c, const IndexSet& signal_subset,
                            const IndexSet& idler_subset);

FeatureVector orbit_counts(const std::vector<SampleRecord>& samples,
                           const BipartiteGraph& graph,
                           OrbitSemantics semantics = OrbitSemantics::kTraceOut);

OrbitProbabilities theoretical_orbit_probabilities(
    const BipartiteGraph& graph, const Distribution& dist);
OrbitProbabilities theoretical_orbit_probabilities(
    const BipartiteGraph& graph, const ExperimentConfig& config);

std::optional<VertexBijection> are_isomorphic(const BipartiteGraph& g1,
                                              const BipartiteGraph& g2,
                                              double tol = 1e-9);

// Applies map to g: result.weights(i, j) = g.weights(map.signal[i], map.idler[j])
// is the matrix of the target graph.
CMatrix permuted_weights(const BipartiteGraph& g, const VertexBijection& map);

// Families of isomorphic subgraphs with n_vertices vertices in total, chosen
// to maximize the minimum separation of their exact orbit probabilities.
std::vector<GraphFamily> make_graph_families(const ExperimentConfig& config,
                                             int n_vertices, int count);

struct ClusterCriterion {
  // Used when k == 0.
  double threshold = 0.0;
  int k = 0;
};

double default_cluster_threshold(std::uint64_t n_samples);

// Single-linkage clustering of rate-normalized (n_o2, n_o4); labels are
// numbered by first appearance.
std::vector<int> cluster_feature_vectors(
    const std::vector<FeatureVector>& vectors, const ClusterCriterion& criterion);

// Number of families whose members share a single cluster label, counted by
// distinct labels.
int recovered_families(const std::vector<int>& labels,
                       const std::vector<int>& family_of);

}  // namespace tfgbs

#endif  // TFGBS_GRAPHS_HPP_
