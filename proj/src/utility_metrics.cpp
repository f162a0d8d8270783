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

#include "intact/utility_metrics.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

#include "intact/errors.hpp"
#include "intact/lexicon.hpp"
#include "intact/utf8.hpp"

namespace intact {

namespace {

bool is_word(std::string_view token) {
  for (unsigned char c : token) {
    if (std::isalnum(c) || c >= 0x80) return true;
  }
  return false;
}

}  // namespace

std::vector<ScoringSpan> segment_scoring_spans(const AnnotatedDocument& doc) {
  const std::string& text = doc.text();
  const auto& pii = doc.spans();
  const Lexicon& lex = Lexicon::english();

  std::vector<ScoringSpan> out;
  std::size_t next_pii = 0;
  for (const Token& t : tokenize(text)) {
    while (next_pii < pii.size() && pii[next_pii].byte_end <= t.begin) {
      out.push_back({{pii[next_pii].byte_begin, pii[next_pii].byte_end}, pii[next_pii].surface,
                     next_pii});
      ++next_pii;
    }
    if (next_pii < pii.size() && pii[next_pii].byte_begin < t.end) continue;  // inside a span
    if (!is_word(t.text) || lex.is_stopword(utf8::to_lower(t.text))) continue;
    out.push_back({{t.begin, t.end}, t.text, std::nullopt});
  }
  for (; next_pii < pii.size(); ++next_pii) {
    out.push_back({{pii[next_pii].byte_begin, pii[next_pii].byte_end}, pii[next_pii].surface,
                   next_pii});
  }
  return out;
}

MaskedPass build_masked_pass(std::string_view text, std::span<const ScoringSpan> spans,
                             std::span<const std::size_t> masked, const MaskScoringConfig& cfg) {
  MaskedPass pass;
  pass.request.model_id = cfg.scorer_model_id;
  pass.request.sentinel = cfg.mask_sentinel;
  std::string& out = pass.request.text;
  std::size_t cursor = 0;
  std::size_t scalars = 0;  // scalar length of `out`

  auto emit_text = [&](std::string_view piece) {
    out.append(piece);
    scalars += utf8::length(piece);
  };
  auto emit_mask = [&](std::size_t owner, std::string token) {
    pass.request.positions.push_back(scalars);
    pass.request.candidates.push_back(std::move(token));
    pass.owner.push_back(owner);
    emit_text(cfg.mask_sentinel);
  };

  for (std::size_t idx : masked) {
    const ScoringSpan& s = spans[idx];
    emit_text(text.substr(cursor, s.range.begin - cursor));
    const std::string_view surface = text.substr(s.range.begin, s.range.end - s.range.begin);
    const auto tokens = tokenize(surface);
    if (tokens.empty()) {
      emit_mask(idx, std::string(surface));
    } else {
      std::size_t inner = 0;
      for (const Token& t : tokens) {
        emit_text(surface.substr(inner, t.begin - inner));
        emit_mask(idx, t.text);
        inner = t.end;
      }
      emit_text(surface.substr(inner));
    }
    cursor = s.range.end;
  }
  emit_text(text.substr(cursor));
  return pass;
}

std::vector<double> span_probabilities(std::string_view text, std::span<const ScoringSpan> spans,
                                       MaskScorer& scorer, const MaskScoringConfig& cfg) {
  if (cfg.spacing < 2) throw ConfigError("mask spacing N must be at least 2");
  std::vector<double> prob(spans.size(), 1.0);
  for (std::size_t r = 0; r < cfg.spacing && r < spans.size(); ++r) {
    std::vector<std::size_t> masked;
    for (std::size_t i = r; i < spans.size(); i += cfg.spacing) masked.push_back(i);
    MaskedPass pass = build_masked_pass(text, spans, masked, cfg);

    MaskScoreResponse response;
    try {
      response = scorer.mask_score(pass.request);
    } catch (const ScorerUnavailableError&) {
      throw;
    } catch (const ResponseFormatError&) {
      throw;
    } catch (const Error& e) {
      throw ScorerUnavailableError(e.what());
    }
    if (response.probabilities.size() != pass.owner.size()) {
      throw ResponseFormatError(fmt::format("mask scorer returned {} probabilities for {} masks",
                                            response.probabilities.size(), pass.owner.size()));
    }
    for (std::size_t i : masked) prob[i] = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pass.owner.size(); ++k) {
      double p = response.probabilities[k];
      if (!(p >= 0.0)) throw ResponseFormatError("mask scorer returned a non-probability");
      prob[pass.owner[k]] = std::min(prob[pass.owner[k]], p);
    }
  }
  for (double& p : prob) p = std::clamp(p, std::max(cfg.floor, 0.0), 1.0);
  return prob;
}

std::vector<ScoredSpan> score_spans(std::vector<ScoringSpan> spans,
                                    const std::vector<double>& probabilities, double log_base) {
  if (spans.size() != probabilities.size()) {
    throw InvariantError("one probability per scoring span is required");
  }
  if (!(log_base > 0.0) || log_base == 1.0) throw ConfigError("logarithm base must be positive and not 1");
  std::vector<ScoredSpan> out(spans.size());
  const double ln_base = std::log(log_base);
  double tic = 0.0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    out[i].span = std::move(spans[i]);
    out[i].probability = probabilities[i];
    out[i].ic = -std::log(probabilities[i]) / ln_base;
    if (out[i].ic < 0.0) out[i].ic = 0.0;  // -log(1) may round to -0
    tic += out[i].ic;
  }
  for (auto& s : out) {
    s.ric = tic > 0.0 ? s.ic / tic : 1.0 / static_cast<double>(out.size());
  }
  return out;
}

std::vector<ScoredSpan> score_document(const AnnotatedDocument& doc, MaskScorer& scorer,
                                       const MaskScoringConfig& cfg, double log_base) {
  auto spans = segment_scoring_spans(doc);
  const auto prob = span_probabilities(doc.text(), spans, scorer, cfg);
  return score_spans(std::move(spans), prob, log_base);
}

double clamp_similarity(double cosine) { return std::clamp(cosine, 0.0, 1.0); }

double tps(std::span<const double> ric, std::span<const double> similarity) {
  if (ric.size() != similarity.size()) throw InvariantError("tps needs one similarity per span");
  double sum = 0.0;
  for (std::size_t i = 0; i < ric.size(); ++i) sum += ric[i] * similarity[i];
  return sum;
}

DocumentUtility document_tps(const AnnotatedDocument& original, const SanitizedDocument& sanitized,
                             std::span<const ScoredSpan> scored, Embedder& embedder,
                             const std::string& embed_model_id) {
  std::unordered_map<std::size_t, const ReplacementRecord*> by_span;
  for (const auto& r : sanitized.records) by_span[r.span_index] = &r;

  DocumentUtility out;
  out.doc_id = original.doc_id();
  std::vector<std::string> texts;
  std::unordered_map<std::string, std::size_t> text_index;
  auto intern = [&](const std::string& t) {
    auto [it, inserted] = text_index.try_emplace(t, texts.size());
    if (inserted) texts.push_back(t);
    return it->second;
  };

  std::vector<std::pair<std::size_t, std::size_t>> pending;  // (scored span, pair index)
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    SpanUtility u;
    u.surface = scored[i].span.surface;
    u.replacement = u.surface;
    u.ic = scored[i].ic;
    u.ric = scored[i].ric;
    if (scored[i].span.pii_index) {
      auto it = by_span.find(*scored[i].span.pii_index);
      if (it == by_span.end()) {
        throw MissingRecordError(fmt::format("document '{}': no record for span {}",
                                             original.doc_id(), *scored[i].span.pii_index));
      }
      u.replacement = it->second->selected;
      u.edited = u.replacement != u.surface;
      if (u.edited) {
        if (u.replacement.empty()) {
          u.similarity = 0.0;
        } else {
          pending.emplace_back(i, pairs.size());
          pairs.emplace_back(intern(u.surface), intern(u.replacement));
        }
      }
    }
    out.spans.push_back(std::move(u));
  }

  if (!texts.empty()) {
    const auto vectors = embed_texts(embedder, embed_model_id, texts);
    for (const auto& [span, pair] : pending) {
      const auto [a, b] = pairs[pair];
      out.spans[span].similarity = clamp_similarity(cosine(vectors[a], vectors[b]));
    }
  }

  std::vector<double> ric, sim;
  for (const auto& u : out.spans) {
    ric.push_back(u.ric);
    sim.push_back(u.similarity);
  }
  out.tps = out.spans.empty() ? 1.0 : tps(ric, sim);
  return out;
}

UtilityReport evaluate_tps(std::span<const SanitizedEntry> entries, MaskScorer& scorer,
                           Embedder& embedder, const MaskScoringConfig& cfg,
                           const std::string& embed_model_id, double log_base) {
  UtilityReport report;
  double sum = 0.0;
  for (const auto& e : entries) {
    const auto scored = score_document(e.original, scorer, cfg, log_base);
    report.documents.push_back(document_tps(e.original, e.sanitized, scored, embedder, embed_model_id));
    sum += report.documents.back().tps;
  }
  if (!entries.empty()) report.mean_tps = sum / static_cast<double>(entries.size());
  return report;
}

}  // namespace intact
