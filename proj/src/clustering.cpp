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

#include "intact/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "intact/errors.hpp"
#include "intact/random.hpp"
#include "intact/text_analysis.hpp"

namespace intact {

namespace {

double squared_distance(const Vector& a, const Vector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    d += t * t;
  }
  return d;
}

void check_points(std::span<const Vector> points, std::size_t k) {
  if (k == 0) throw DegenerateInputError("k must be at least 1");
  if (k > points.size()) {
    throw DegenerateInputError(fmt::format("k = {} exceeds the {} points", k, points.size()));
  }
  for (const auto& p : points) {
    if (p.size() != points.front().size()) {
      throw DegenerateInputError("points have different dimensions");
    }
  }
}

std::vector<Vector> means(std::span<const Vector> points, const Partition& labels, std::size_t k) {
  const std::size_t dim = points.front().size();
  std::vector<Vector> c(k, Vector(dim, 0.0));
  std::vector<std::size_t> n(k, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    ++n[labels[i]];
    for (std::size_t d = 0; d < dim; ++d) c[labels[i]][d] += points[i][d];
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (n[j] == 0) continue;
    for (double& x : c[j]) x /= static_cast<double>(n[j]);
  }
  return c;
}

std::vector<Vector> seed_plusplus(std::span<const Vector> points, std::size_t k, SplitMix64& rng) {
  std::vector<Vector> centers;
  centers.push_back(points[rng.below(points.size())]);
  std::vector<double> d2(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) d2[i] = squared_distance(points[i], centers[0]);
  while (centers.size() < k) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t pick = 0;
    if (total <= 0.0) {
      pick = rng.below(points.size());
    } else {
      double u = rng.uniform() * total;
      pick = points.size() - 1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (u < d2[i]) {
          pick = i;
          break;
        }
        u -= d2[i];
      }
    }
    centers.push_back(points[pick]);
    for (std::size_t i = 0; i < points.size(); ++i) {
      d2[i] = std::min(d2[i], squared_distance(points[i], centers.back()));
    }
  }
  return centers;
}

double entropy(const std::map<std::size_t, std::size_t>& counts, double n) {
  double h = 0.0;
  for (const auto& [label, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double inertia(std::span<const Vector> points, const Partition& labels) {
  if (points.empty()) return 0.0;
  if (labels.size() != points.size()) throw MismatchedElementsError("one label per point is required");
  const std::size_t k = *std::max_element(labels.begin(), labels.end()) + 1;
  const auto c = means(points, labels, k);
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) sum += squared_distance(points[i], c[labels[i]]);
  return sum;
}

KMeansResult kmeans_single(std::span<const Vector> points, std::size_t k, std::uint64_t seed,
                           std::size_t max_iterations) {
  check_points(points, k);
  SplitMix64 rng(seed);
  KMeansResult result;
  result.centroids = seed_plusplus(points, k, rng);
  result.labels.assign(points.size(), k);  // no assignment yet

  for (std::size_t it = 0; it < max_iterations; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < k; ++j) {
        const double d = squared_distance(points[i], result.centroids[j]);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      if (result.labels[i] != best) {
        result.labels[i] = best;
        changed = true;
      }
    }
    result.iterations = it + 1;
    if (!changed) break;

    // An emptied cluster takes over the point farthest from its centroid.
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t l : result.labels) ++sizes[l];
    for (std::size_t j = 0; j < k; ++j) {
      if (sizes[j] > 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (sizes[result.labels[i]] < 2) continue;
        const double d = squared_distance(points[i], result.centroids[result.labels[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      --sizes[result.labels[far]];
      result.labels[far] = j;
      ++sizes[j];
    }
    result.centroids = means(points, result.labels, k);
  }
  result.centroids = means(points, result.labels, k);
  result.inertia = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    result.inertia += squared_distance(points[i], result.centroids[result.labels[i]]);
  }
  return result;
}

KMeansResult kmeanspp_cluster(std::span<const Vector> points, const ClusteringConfig& cfg,
                              std::uint64_t seed) {
  check_points(points, cfg.k);
  const std::size_t restarts = std::max<std::size_t>(cfg.restarts, 1);
  KMeansResult best;
  std::vector<double> inertias;
  inertias.reserve(restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    KMeansResult run = kmeans_single(points, cfg.k, derive_seed(seed, r), cfg.max_iterations);
    inertias.push_back(run.inertia);
    if (r == 0 || run.inertia < best.inertia) best = std::move(run);
  }
  for (double x : inertias) {
    if (best.inertia > x) throw InvariantError("best restart is not minimal");
  }
  best.restart_inertias = std::move(inertias);
  return best;
}

KMeansResult kmeanspp_cluster(std::span<const Vector> points, const ClusteringConfig& cfg) {
  return kmeanspp_cluster(points, cfg, cfg.rng_seed);
}

double nmi(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) {
    throw MismatchedElementsError(
        fmt::format("partitions cover {} and {} elements", a.size(), b.size()));
  }
  if (a.empty()) return 1.0;
  const double n = static_cast<double>(a.size());
  std::map<std::size_t, std::size_t> ca, cb;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++ca[a[i]];
    ++cb[b[i]];
    ++joint[{a[i], b[i]}];
  }
  const double ha = entropy(ca, n);
  const double hb = entropy(cb, n);
  if (ca.size() == 1 || cb.size() == 1) return (ca.size() == 1 && cb.size() == 1) ? 1.0 : 0.0;
  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    const double pij = static_cast<double>(c) / n;
    const double pi = static_cast<double>(ca[key.first]) / n;
    const double pj = static_cast<double>(cb[key.second]) / n;
    mi += pij * std::log(pij / (pi * pj));
  }
  return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

ClusteringUtility clustering_utility(std::span<const Vector> original,
                                     std::span<const Vector> sanitized,
                                     const ClusteringConfig& cfg) {
  if (original.size() != sanitized.size()) {
    throw MismatchedElementsError(fmt::format("{} original and {} sanitized documents",
                                              original.size(), sanitized.size()));
  }
  ClusteringUtility out;
  const std::size_t runs = std::max<std::size_t>(cfg.nmi_runs, 1);
  for (std::size_t r = 0; r < runs; ++r) {
    const auto a = kmeanspp_cluster(original, cfg, derive_seed(cfg.rng_seed, 2 * r));
    const auto b = kmeanspp_cluster(sanitized, cfg, derive_seed(cfg.rng_seed, 2 * r + 1));
    out.runs.push_back(nmi(a.labels, b.labels));
  }
  double sum = 0.0;
  for (double x : out.runs) sum += x;
  out.mean = sum / static_cast<double>(runs);
  if (runs > 1) {
    double ss = 0.0;
    for (double x : out.runs) ss += (x - out.mean) * (x - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(runs - 1));
  }
  return out;
}

Vector document_embedding(const std::string& text, Embedder& embedder, const std::string& model_id) {
  std::vector<std::string> tokens;
  for (const Token& t : tokenize(text)) tokens.push_back(t.text);
  if (tokens.empty()) return {};
  const auto vectors = embed_texts(embedder, model_id, tokens);
  Vector mean(vectors.front().size(), 0.0);
  for (const auto& v : vectors) {
    for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += v[d];
  }
  for (double& x : mean) x /= static_cast<double>(vectors.size());
  return mean;
}

std::vector<Vector> document_embeddings(const std::vector<std::string>& texts, Embedder& embedder,
                                        const std::string& model_id) {
  std::vector<Vector> out;
  out.reserve(texts.size());
  std::size_t dim = 0;
  for (const auto& t : texts) {
    out.push_back(document_embedding(t, embedder, model_id));
    dim = std::max(dim, out.back().size());
  }
  for (auto& v : out) {
    if (v.empty()) v.assign(dim, 0.0);
  }
  return out;
}

std::vector<std::pair<std::size_t, double>> inertia_sweep(std::span<const Vector> points,
                                                          const ClusteringConfig& cfg,
                                                          std::size_t k_min, std::size_t k_max) {
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t k = std::max<std::size_t>(k_min, 1); k <= k_max && k <= points.size(); ++k) {
    ClusteringConfig c = cfg;
    c.k = k;
    out.emplace_back(k, kmeanspp_cluster(points, c).inertia);
  }
  return out;
}

}  // namespace intact
