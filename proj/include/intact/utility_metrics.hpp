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

#ifndef INTACT_UTILITY_METRICS_HPP_
#define INTACT_UTILITY_METRICS_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intact/document.hpp"
#include "intact/gateway.hpp"
#include "intact/text_analysis.hpp"

namespace intact {

struct MaskScoringConfig {
  std::size_t spacing = 6;  // N: one of every N scoring spans is masked per pass
  std::string mask_sentinel = "[MASK]";
  std::string scorer_model_id;
  double floor = 1e-12;
};

/// A unit of information-content scoring: an annotated span, or a single
/// content word outside every annotated span.
struct ScoringSpan {
  ByteRange range;
  std::string surface;
  std::optional<std::size_t> pii_index;  // index into doc.spans() when annotated
};

/// Annotated spans plus every remaining non-stopword word, in text order.
std::vector<ScoringSpan> segment_scoring_spans(const AnnotatedDocument& doc);

/// The text with the word tokens of the selected spans replaced by the
/// sentinel, and one (position, token) pair per sentinel. Positions are
/// scalar offsets in the masked text.
struct MaskedPass {
  MaskScoreRequest request;
  std::vector<std::size_t> owner;  // scoring-span index of each position
};
MaskedPass build_masked_pass(std::string_view text, std::span<const ScoringSpan> spans,
                             std::span<const std::size_t> masked, const MaskScoringConfig& cfg);

/// Probability of each scoring span predicted from its context. Pass r
/// masks the spans whose index is r modulo N; passes without spans are not
/// sent. A span's probability is the smallest of its tokens', floored at
/// cfg.floor and capped at 1.
std::vector<double> span_probabilities(std::string_view text, std::span<const ScoringSpan> spans,
                                       MaskScorer& scorer, const MaskScoringConfig& cfg);

struct ScoredSpan {
  ScoringSpan span;
  double probability = 1.0;
  double ic = 0.0;
  double ric = 0.0;
};

/// IC = -log(p) in the given base; RIC = IC / TIC. A document whose spans
/// all carry zero information gets uniform RIC.
std::vector<ScoredSpan> score_spans(std::vector<ScoringSpan> spans,
                                    const std::vector<double>& probabilities,
                                    double log_base = M_E);

std::vector<ScoredSpan> score_document(const AnnotatedDocument& doc, MaskScorer& scorer,
                                       const MaskScoringConfig& cfg, double log_base = M_E);

/// Cosine clamped into [0, 1].
double clamp_similarity(double cosine);

/// Sum of ric[i] * similarity[i].
double tps(std::span<const double> ric, std::span<const double> similarity);

struct SpanUtility {
  std::string surface;
  std::string replacement;
  bool edited = false;
  double ic = 0.0;
  double ric = 0.0;
  double similarity = 1.0;
};

struct DocumentUtility {
  std::string doc_id;
  double tps = 1.0;
  std::vector<SpanUtility> spans;
};

struct UtilityReport {
  std::vector<DocumentUtility> documents;
  double mean_tps = 0.0;
};

/// TPS of one sanitized document. Words outside annotated spans are never
/// edited; an annotated span replaced by its own surface counts as
/// unedited, a removed one has similarity 0.
DocumentUtility document_tps(const AnnotatedDocument& original, const SanitizedDocument& sanitized,
                             std::span<const ScoredSpan> scored, Embedder& embedder,
                             const std::string& embed_model_id);

UtilityReport evaluate_tps(std::span<const SanitizedEntry> entries, MaskScorer& scorer,
                           Embedder& embedder, const MaskScoringConfig& cfg,
                           const std::string& embed_model_id, double log_base = M_E);

}  // namespace intact

#endif  // INTACT_UTILITY_METRICS_HPP_
