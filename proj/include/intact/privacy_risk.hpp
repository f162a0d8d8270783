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

#ifndef INTACT_PRIVACY_RISK_HPP_
#define INTACT_PRIVACY_RISK_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "intact/document.hpp"
#include "intact/gateway.hpp"

namespace intact {

struct BackgroundEntry {
  std::string individual_id;
  std::string text;
};

/// Public documents about a population of individuals, one per individual.
class BackgroundCorpus {
 public:
  /// InvariantError on duplicate or empty individual ids.
  static BackgroundCorpus create(std::vector<BackgroundEntry> entries);

  /// Reads the corpus file format; every line needs an individual_id.
  static BackgroundCorpus read(const std::filesystem::path& path);

  const std::vector<BackgroundEntry>& entries() const { return entries_; }
  std::size_t population() const { return entries_.size(); }
  bool contains(const std::string& individual_id) const;

 private:
  std::vector<BackgroundEntry> entries_;
};

/// The first `fraction` of a text, cut back to a word boundary.
std::string truncate_text(std::string_view text, double fraction);

/// Population of the protected individuals plus as many decoys, sampled
/// without replacement from `decoy_pool` (all of it when the pool is
/// smaller). Every text is truncated to `truncate_fraction`.
BackgroundCorpus build_background(const std::vector<BackgroundEntry>& protected_individuals,
                                  const std::vector<BackgroundEntry>& decoy_pool,
                                  std::uint64_t seed, double truncate_fraction = 1.0);

struct TrainConfig {
  double learning_rate = 0.5;
  double l2 = 1e-4;
  std::size_t max_epochs = 2000;
  double tolerance = 1e-9;  // stop once the loss improves by less
  std::uint64_t seed = 0;
  std::string embed_model_id;
};

/// Multinomial logistic regression over frozen document embeddings.
class LinearAttacker {
 public:
  LinearAttacker(std::vector<std::string> classes, std::size_t dimension);

  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t epochs() const { return epochs_; }
  double final_loss() const { return loss_; }

  std::vector<double> logits(const Vector& x) const;

  /// Index of the highest logit; equal logits go to the lowest class id.
  /// `tie` reports whether another class had the same logit.
  std::size_t predict(const Vector& x, bool* tie = nullptr) const;

  /// Full-batch gradient descent on the softmax cross-entropy with L2.
  void fit(std::span<const Vector> xs, std::span<const std::size_t> ys, const TrainConfig& cfg);

  std::string model_label;  // the embedding model the features come from

 private:
  std::vector<std::string> classes_;  // sorted
  std::size_t dimension_;
  std::vector<double> weights_;  // classes x (dimension + 1), bias last
  std::size_t epochs_ = 0;
  double loss_ = 0.0;
};

/// Embeds the background texts and trains the attacker on them.
/// DegenerateCorpusError for fewer than two individuals.
LinearAttacker train_attacker(const BackgroundCorpus& background, Embedder& embedder,
                              const TrainConfig& cfg);

struct ReidentificationVerdict {
  std::string doc_id;
  std::string truth;
  std::string predicted;
  bool correct = false;
  bool tie = false;
};

struct RiskReport {
  double trir = 0.0;
  double chance = 0.0;  // 1 / P
  std::size_t population = 0;
  std::string attacker;
  std::vector<ReidentificationVerdict> verdicts;
};

struct SanitizedText {
  std::string doc_id;
  std::string text;
};

/// Fraction of documents the attacker links to their true individual.
/// UnknownIndividualError when a document has no truth entry or its
/// individual is outside the attacker's population.
RiskReport trir(std::span<const SanitizedText> documents, const LinearAttacker& attacker,
                Embedder& embedder, const std::map<std::string, std::string>& truth,
                const std::string& embed_model_id);

/// Reads a doc_id -> individual_id table: either a JSON object or JSON
/// lines with doc_id and individual_id fields.
std::map<std::string, std::string> read_truth(const std::filesystem::path& path);

}  // namespace intact

#endif  // INTACT_PRIVACY_RISK_HPP_
