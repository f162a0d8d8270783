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

#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "intact/clustering.hpp"
#include "intact/errors.hpp"
#include "intact/mock_gateway.hpp"

using namespace intact;

namespace {

// Exhaustive search over every assignment of n points to k non-empty
// clusters; returns the lowest inertia.
double brute_force_inertia(const std::vector<Vector>& pts, std::size_t k) {
  double best = std::numeric_limits<double>::infinity();
  Partition labels(pts.size(), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == pts.size()) {
      if (used == k) best = std::min(best, inertia(pts, labels));
      return;
    }
    // Restricted growth strings enumerate each partition once.
    for (std::size_t c = 0; c <= used && c < k; ++c) {
      labels[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
  return best;
}

double entropy(const Partition& p) {
  std::map<std::size_t, double> count;
  for (auto x : p) count[x] += 1.0;
  double h = 0.0;
  for (auto& [_, c] : count) h -= c / p.size() * std::log(c / p.size());
  return h;
}

// The textbook formula with no shortcuts.
double nmi_oracle(const Partition& a, const Partition& b) {
  const double n = static_cast<double>(a.size());
  std::map<std::pair<std::size_t, std::size_t>, double> joint;
  std::map<std::size_t, double> ca, cb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1;
    ca[a[i]] += 1;
    cb[b[i]] += 1;
  }
  double mi = 0.0;
  for (auto& [key, c] : joint) mi += c / n * std::log(n * c / (ca[key.first] * cb[key.second]));
  return mi / std::sqrt(entropy(a) * entropy(b));
}

std::vector<Vector> random_points(std::mt19937& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vector> pts(n, Vector(dim));
  for (auto& p : pts) {
    for (auto& x : p) x = g(rng);
  }
  return pts;
}

}  // namespace

TEST_SUITE("clustering") {

TEST_CASE("square corners become singletons") {
  const std::vector<Vector> pts = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  ClusteringConfig cfg;
  cfg.k = 4;
  const auto r = kmeanspp_cluster(pts, cfg, 1);
  CHECK(r.inertia == doctest::Approx(0.0));
  CHECK(std::set<std::size_t>(r.labels.begin(), r.labels.end()).size() == 4);
  CHECK(r.restart_inertias.size() == 50);
}

TEST_CASE("two blobs match the exhaustive optimum") {
  const std::vector<Vector> pts = {{0, 0}, {0.1, 0}, {0, 0.1}, {5, 5}, {5.1, 5}, {5, 5.1}};
  ClusteringConfig cfg;
  cfg.k = 2;
  const auto r = kmeanspp_cluster(pts, cfg, 7);
  CHECK(r.inertia == doctest::Approx(brute_force_inertia(pts, 2)));
  CHECK(r.labels[0] == r.labels[1]);
  CHECK(r.labels[0] == r.labels[2]);
  CHECK(r.labels[3] == r.labels[4]);
  CHECK(r.labels[0] != r.labels[3]);
}

TEST_CASE("one cluster has the total scatter as inertia") {
  std::mt19937 rng(1);
  const auto pts = random_points(rng, 9, 3);
  ClusteringConfig cfg;
  cfg.k = 1;
  const auto r = kmeanspp_cluster(pts, cfg, 3);
  Vector mean(3, 0.0);
  for (const auto& p : pts) {
    for (int d = 0; d < 3; ++d) mean[d] += p[d] / 9.0;
  }
  double scatter = 0.0;
  for (const auto& p : pts) {
    for (int d = 0; d < 3; ++d) scatter += (p[d] - mean[d]) * (p[d] - mean[d]);
  }
  CHECK(r.inertia == doctest::Approx(scatter));
}

TEST_CASE("small instances reach the exhaustive optimum") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + trial % 5;
    const std::size_t k = 1 + trial % 3;
    const auto pts = random_points(rng, n, 2);
    ClusteringConfig cfg;
    cfg.k = k;
    const auto r = kmeanspp_cluster(pts, cfg, trial);
    CHECK(r.inertia == doctest::Approx(brute_force_inertia(pts, k)).epsilon(1e-9));
    for (double x : r.restart_inertias) CHECK(r.inertia <= x + 1e-12);
  }
}

TEST_CASE("degenerate inputs are rejected") {
  const std::vector<Vector> pts = {{0, 0}, {1, 1}};
  ClusteringConfig cfg;
  cfg.k = 3;
  CHECK_THROWS_AS(kmeanspp_cluster(pts, cfg, 0), DegenerateInputError);
  cfg.k = 0;
  CHECK_THROWS_AS(kmeanspp_cluster(pts, cfg, 0), DegenerateInputError);
  const std::vector<Vector> ragged = {{0, 0}, {1}};
  cfg.k = 1;
  CHECK_THROWS_AS(kmeanspp_cluster(ragged, cfg, 0), DegenerateInputError);
}

TEST_CASE("seeded runs are reproducible") {
  std::mt19937 rng(5);
  const auto pts = random_points(rng, 40, 4);
  ClusteringConfig cfg;
  cfg.rng_seed = 99;
  CHECK(kmeanspp_cluster(pts, cfg).labels == kmeanspp_cluster(pts, cfg).labels);
}

TEST_CASE("NMI examples") {
  CHECK(nmi({0, 0, 1, 1}, {0, 0, 1, 1}) == doctest::Approx(1.0));
  CHECK(nmi({0, 0, 1, 1}, {5, 5, 2, 2}) == doctest::Approx(1.0));
  CHECK(std::abs(nmi({0, 0, 1, 1}, {0, 1, 0, 1})) < 1e-12);
  CHECK(nmi({0, 0, 0}, {1, 1, 1}) == 1.0);
  CHECK(nmi({0, 0, 0}, {0, 1, 1}) == 0.0);
  CHECK_THROWS_AS(nmi({0, 1}, {0, 1, 1}), MismatchedElementsError);
}

TEST_CASE("NMI properties against the oracle") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    Partition a(n), b(n);
    for (auto& x : a) x = rng() % 4;
    for (auto& x : b) x = rng() % 5;
    const double v = nmi(a, b);
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
    CHECK(v == doctest::Approx(nmi(b, a)));
    if (entropy(a) > 0 && entropy(b) > 0) CHECK(v == doctest::Approx(nmi_oracle(a, b)));
    CHECK(nmi(a, a) == doctest::Approx(1.0));
  }
}

TEST_CASE("independent random partitions score near zero") {
  std::mt19937 rng(2);
  Partition a(400), b(400);
  for (auto& x : a) x = rng() % 4;
  for (auto& x : b) x = rng() % 4;
  CHECK(nmi(a, b) < 0.2);
}

TEST_CASE("clustering utility over runs") {
  std::mt19937 rng(8);
  auto pts = random_points(rng, 30, 3);
  ClusteringConfig cfg;
  cfg.restarts = 5;
  cfg.rng_seed = 4;
  const auto same = clustering_utility(pts, pts, cfg);
  CHECK(same.runs.size() == 5);
  CHECK(same.mean <= 1.0 + 1e-12);
  CHECK(same.stddev >= 0.0);
  const auto again = clustering_utility(pts, pts, cfg);
  CHECK(again.runs == same.runs);
}

TEST_CASE("document embeddings average token vectors") {
  MockEmbedder e(2);
  e.script("Oslo", {1.0, 0.0});
  e.script("cold", {0.0, 1.0});
  const auto v = document_embedding("Oslo cold", e, "m");
  CHECK(v == Vector{0.5, 0.5});
  const auto vs = document_embeddings({"Oslo", ""}, e, "m");
  CHECK(vs[1] == Vector{0.0, 0.0});
  std::mt19937 rng(3);
  const auto sweep = inertia_sweep(random_points(rng, 20, 2), ClusteringConfig{}, 2, 5);
  REQUIRE(sweep.size() == 4);
  for (std::size_t i = 1; i < sweep.size(); ++i) CHECK(sweep[i].second <= sweep[i - 1].second + 1e-9);
}

}  // TEST_SUITE
