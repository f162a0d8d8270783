// Copyright 2026 The INTACT Authors
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

#ifndef INTACT_CLUSTERING_HPP_
#define INTACT_CLUSTERING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "intact/gateway.hpp"

namespace intact {

struct ClusteringConfig {
  std::size_t k = 4;
  std::size_t restarts = 50;
  std::size_t nmi_runs = 5;
  std::uint64_t rng_seed = 0;
  std::size_t max_iterations = 300;
};

/// Cluster index per element.
using Partition = std::vector<std::size_t>;

struct KMeansResult {
  Partition labels;
  std::vector<Vector> centroids;
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::vector<double> restart_inertias;  // filled by kmeanspp_cluster
};

/// Sum of squared distances from each point to the mean of its cluster.
double inertia(std::span<const Vector> points, const Partition& labels);

/// One K-means++ seeding followed by Lloyd iterations until the assignment
/// stops changing or `max_iterations` is reached.
KMeansResult kmeans_single(std::span<const Vector> points, std::size_t k, std::uint64_t seed,
                           std::size_t max_iterations = 300);

/// Best of `cfg.restarts` runs by inertia, each on its own RNG stream
/// derived from `seed`. DegenerateInputError when k exceeds the points.
KMeansResult kmeanspp_cluster(std::span<const Vector> points, const ClusteringConfig& cfg,
                              std::uint64_t seed);
KMeansResult kmeanspp_cluster(std::span<const Vector> points, const ClusteringConfig& cfg);

/// I(A;B) / sqrt(H(A) H(B)); two single-cluster partitions give 1, one
/// single-cluster partition against a split one gives 0.
double nmi(const Partition& a, const Partition& b);

struct ClusteringUtility {
  std::vector<double> runs;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single run
};

/// Clusters both corpora `cfg.nmi_runs` times and compares the partitions.
ClusteringUtility clustering_utility(std::span<const Vector> original,
                                     std::span<const Vector> sanitized,
                                     const ClusteringConfig& cfg);

/// Mean of the embeddings of the document's word tokens. A text without
/// tokens gives an empty vector, which callers pad with zeros.
Vector document_embedding(const std::string& text, Embedder& embedder, const std::string& model_id);

/// Document embeddings with empty ones zero-padded to the common dimension.
std::vector<Vector> document_embeddings(const std::vector<std::string>& texts, Embedder& embedder,
                                        const std::string& model_id);

/// Best-of-restarts inertia for each k in [k_min, k_max] not above the
/// number of points.
std::vector<std::pair<std::size_t, double>> inertia_sweep(std::span<const Vector> points,
                                                          const ClusteringConfig& cfg,
                                                          std::size_t k_min = 2,
                                                          std::size_t k_max = 10);

}  // namespace intact

#endif  // INTACT_CLUSTERING_HPP_
