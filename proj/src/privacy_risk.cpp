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

#include "intact/privacy_risk.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "intact/clustering.hpp"
#include "intact/errors.hpp"
#include "intact/random.hpp"
#include "intact/utf8.hpp"

namespace intact {

BackgroundCorpus BackgroundCorpus::create(std::vector<BackgroundEntry> entries) {
  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (e.individual_id.empty()) throw InvariantError("background entry without individual_id");
    if (!seen.insert(e.individual_id).second) {
      throw InvariantError("duplicate individual_id '" + e.individual_id + "' in background corpus");
    }
  }
  BackgroundCorpus c;
  c.entries_ = std::move(entries);
  return c;
}

BackgroundCorpus BackgroundCorpus::read(const std::filesystem::path& path) {
  std::vector<BackgroundEntry> entries;
  for (const auto& doc : ingest_corpus(path)) {
    if (!doc.individual_id()) {
      throw ParseError(fmt::format("{}: document '{}' has no individual_id", path.string(),
                                   doc.doc_id()));
    }
    entries.push_back({*doc.individual_id(), doc.text()});
  }
  return create(std::move(entries));
}

bool BackgroundCorpus::contains(const std::string& individual_id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const BackgroundEntry& e) { return e.individual_id == individual_id; });
}

std::string truncate_text(std::string_view text, double fraction) {
  if (fraction >= 1.0) return std::string(text);
  if (fraction <= 0.0) return {};
  const auto bounds = utf8::boundaries(text);
  const std::size_t scalars = bounds.size() - 1;
  const auto keep = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(scalars)));
  std::size_t end = bounds[std::min(keep, scalars)];
  if (end < text.size() && !utf8::is_space(static_cast<unsigned char>(text[end]))) {
    const auto space = text.rfind(' ', end);
    end = space == std::string_view::npos ? end : space;
  }
  std::string out(text.substr(0, end));
  while (!out.empty() && utf8::is_space(static_cast<unsigned char>(out.back()))) out.pop_back();
  return out;
}

BackgroundCorpus build_background(const std::vector<BackgroundEntry>& protected_individuals,
                                  const std::vector<BackgroundEntry>& decoy_pool,
                                  std::uint64_t seed, double truncate_fraction) {
  std::set<std::string> taken;
  for (const auto& e : protected_individuals) taken.insert(e.individual_id);
  std::vector<const BackgroundEntry*> pool;
  for (const auto& e : decoy_pool) {
    if (!taken.count(e.individual_id)) pool.push_back(&e);
  }
  // Partial Fisher-Yates on the pool.
  SplitMix64 rng(seed);
  const std::size_t want = std::min(protected_individuals.size(), pool.size());
  for (std::size_t i = 0; i < want; ++i) {
    std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  }
  if (want < protected_individuals.size()) {
    spdlog::warn("decoy pool holds {} individuals, {} requested", pool.size(),
                 protected_individuals.size());
  }
  std::vector<BackgroundEntry> entries;
  for (const auto& e : protected_individuals) {
    entries.push_back({e.individual_id, truncate_text(e.text, truncate_fraction)});
  }
  for (std::size_t i = 0; i < want; ++i) {
    entries.push_back({pool[i]->individual_id, truncate_text(pool[i]->text, truncate_fraction)});
  }
  return BackgroundCorpus::create(std::move(entries));
}

LinearAttacker::LinearAttacker(std::vector<std::string> classes, std::size_t dimension)
    : classes_(std::move(classes)), dimension_(dimension) {
  std::sort(classes_.begin(), classes_.end());
  weights_.assign(classes_.size() * (dimension_ + 1), 0.0);
}

std::vector<double> LinearAttacker::logits(const Vector& x) const {
  if (x.size() != dimension_) {
    throw InvariantError(fmt::format("feature dimension {} differs from the attacker's {}", x.size(),
                                     dimension_));
  }
  std::vector<double> z(classes_.size(), 0.0);
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const double* w = &weights_[c * (dimension_ + 1)];
    double s = w[dimension_];
    for (std::size_t d = 0; d < dimension_; ++d) s += w[d] * x[d];
    z[c] = s;
  }
  return z;
}

std::size_t LinearAttacker::predict(const Vector& x, bool* tie) const {
  const auto z = logits(x);
  std::size_t best = 0;
  bool tied = false;
  for (std::size_t c = 1; c < z.size(); ++c) {
    if (z[c] > z[best]) {
      best = c;
      tied = false;
    } else if (z[c] == z[best]) {
      tied = true;
    }
  }
  if (tie) *tie = tied;
  return best;
}

void LinearAttacker::fit(std::span<const Vector> xs, std::span<const std::size_t> ys,
                         const TrainConfig& cfg) {
  const std::size_t n = xs.size();
  const std::size_t classes = classes_.size();
  const std::size_t stride = dimension_ + 1;
  SplitMix64 rng(cfg.seed);
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t d = 0; d < dimension_; ++d) weights_[c * stride + d] = 0.01 * rng.gaussian();
    weights_[c * stride + dimension_] = 0.0;
  }

  std::vector<double> grad(weights_.size());
  double previous = std::numeric_limits<double>::infinity();
  epochs_ = 0;
  for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto z = logits(xs[i]);
      const double top = *std::max_element(z.begin(), z.end());
      double norm = 0.0;
      for (double& v : z) {
        v = std::exp(v - top);
        norm += v;
      }
      loss -= std::log(std::max(z[ys[i]] / norm, 1e-300));
      for (std::size_t c = 0; c < classes; ++c) {
        const double g = z[c] / norm - (c == ys[i] ? 1.0 : 0.0);
        double* gw = &grad[c * stride];
        for (std::size_t d = 0; d < dimension_; ++d) gw[d] += g * xs[i][d];
        gw[dimension_] += g;
      }
    }
    loss /= static_cast<double>(n);
    double reg = 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
      for (std::size_t d = 0; d < dimension_; ++d) reg += weights_[c * stride + d] * weights_[c * stride + d];
    }
    loss += 0.5 * cfg.l2 * reg;
    loss_ = loss;
    epochs_ = epoch + 1;
    if (previous - loss < cfg.tolerance && epoch > 0) break;
    previous = loss;

    for (std::size_t c = 0; c < classes; ++c) {
      for (std::size_t d = 0; d <= dimension_; ++d) {
        double g = grad[c * stride + d] / static_cast<double>(n);
        if (d < dimension_) g += cfg.l2 * weights_[c * stride + d];
        weights_[c * stride + d] -= cfg.learning_rate * g;
      }
    }
  }
}

LinearAttacker train_attacker(const BackgroundCorpus& background, Embedder& embedder,
                              const TrainConfig& cfg) {
  if (background.population() < 2) {
    throw DegenerateCorpusError(fmt::format("background corpus has {} individual(s); at least 2 are needed",
                                            background.population()));
  }
  std::vector<std::string> texts, ids;
  for (const auto& e : background.entries()) {
    texts.push_back(e.text);
    ids.push_back(e.individual_id);
  }
  const auto xs = document_embeddings(texts, embedder, cfg.embed_model_id);
  const std::size_t dim = xs.empty() ? 0 : xs.front().size();
  LinearAttacker attacker(ids, dim);
  attacker.model_label = "linear-softmax over mean token embeddings (" +
                         (cfg.embed_model_id.empty() ? std::string("default") : cfg.embed_model_id) + ")";
  std::vector<std::size_t> ys;
  const auto& classes = attacker.classes();
  for (const auto& id : ids) {
    ys.push_back(static_cast<std::size_t>(
        std::lower_bound(classes.begin(), classes.end(), id) - classes.begin()));
  }
  attacker.fit(xs, ys, cfg);
  spdlog::info("attacker trained on {} individuals: {} epochs, loss {:.6f}", classes.size(),
               attacker.epochs(), attacker.final_loss());
  return attacker;
}

RiskReport trir(std::span<const SanitizedText> documents, const LinearAttacker& attacker,
                Embedder& embedder, const std::map<std::string, std::string>& truth,
                const std::string& embed_model_id) {
  const auto& classes = attacker.classes();
  RiskReport report;
  report.population = classes.size();
  report.chance = classes.empty() ? 0.0 : 1.0 / static_cast<double>(classes.size());
  report.attacker = attacker.model_label;

  std::vector<std::string> texts;
  for (const auto& d : documents) {
    auto it = truth.find(d.doc_id);
    if (it == truth.end()) throw UnknownIndividualError("no individual recorded for document '" + d.doc_id + "'");
    if (!std::binary_search(classes.begin(), classes.end(), it->second)) {
      throw UnknownIndividualError(fmt::format("individual '{}' of document '{}' is not in the population",
                                               it->second, d.doc_id));
    }
    texts.push_back(d.text);
  }
  auto xs = document_embeddings(texts, embedder, embed_model_id);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    if (xs[i].empty()) xs[i].assign(attacker.dimension(), 0.0);
    ReidentificationVerdict v;
    v.doc_id = documents[i].doc_id;
    v.truth = truth.at(v.doc_id);
    v.predicted = classes[attacker.predict(xs[i], &v.tie)];
    v.correct = v.predicted == v.truth;
    correct += v.correct ? 1 : 0;
    report.verdicts.push_back(std::move(v));
  }
  if (!documents.empty()) {
    report.trir = static_cast<double>(correct) / static_cast<double>(documents.size());
  }
  return report;
}

std::map<std::string, std::string> read_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open truth file '" + path.string() + "'");
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::map<std::string, std::string> out;
  try {
    const auto first = content.find_first_not_of(" \t\r\n");
    auto j = nlohmann::json::parse(content, nullptr, false);
    if (first != std::string::npos && !j.is_discarded() && j.is_object() &&
        !j.contains("doc_id")) {
      for (const auto& [k, v] : j.items()) out[k] = v.get<std::string>();
      return out;
    }
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
      auto nl = content.find('\n', pos);
      if (nl == std::string::npos) nl = content.size();
      const std::string line = content.substr(pos, nl - pos);
      pos = nl + 1;
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto row = nlohmann::json::parse(line);
      out[row.at("doc_id").get<std::string>()] = row.at("individual_id").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return out;
}

}  // namespace intact
