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

#ifndef INTACT_PIPELINE_HPP_
#define INTACT_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "intact/attack.hpp"
#include "intact/document.hpp"
#include "intact/gateway.hpp"
#include "intact/generation.hpp"
#include "intact/text_analysis.hpp"

namespace intact {

struct PipelineConfig {
  GenerationConfig generation;
  AttackConfig attack;
  MatchConfig match;
  Strategy strategy = Strategy::kIntact;
  bool early_exit = true;
  std::uint64_t rng_seed = 0;
  int generation_retries = 1;
};

/// Candidate lists for every span of a document. Later mentions of an
/// entity share the list generated for its first mention. A list left
/// empty means generation failed and the span falls back to its label.
struct DocumentCandidates {
  std::vector<CandidateList> lists;
};

class Sanitizer {
 public:
  /// `attacker` defaults to `generator`. Both must outlive the sanitizer
  /// and be safe for concurrent calls when used from sanitize_corpus.
  Sanitizer(PipelineConfig config, ChatModel& generator, ChatModel* attacker = nullptr);

  const PipelineConfig& config() const { return config_; }

  DocumentCandidates generate_candidates(const AnnotatedDocument& doc) const;

  /// Runs the configured strategy on one document.
  SanitizedDocument sanitize(const AnnotatedDocument& doc) const;

  /// Generation plus attack-guided selection over precomputed lists.
  SanitizedDocument select(const AnnotatedDocument& doc, const DocumentCandidates& candidates) const;

 private:
  CandidateList generate_for_span(const AnnotatedDocument& doc, std::size_t index,
                                  const SentenceContext& ctx) const;
  GuessSet attack(const AnnotatedDocument& doc, std::span<const SpanDraft> drafts,
                  std::size_t target, std::size_t candidate_index,
                  const std::string& candidate) const;

  PipelineConfig config_;
  ChatModel& generator_;
  ChatModel& attacker_;
};

/// Replacement without the attack loop. SUPPRESSION removes every span and
/// ENTITY_TYPE writes the bare label; neither needs candidates. For
/// LEAST_SPECIFIC and MOST_SPECIFIC `candidates` must hold one list per
/// span (MissingCandidatesError otherwise); direct identifiers keep their
/// LABEL_k rule replacement.
SanitizedDocument sanitize_baseline(const AnnotatedDocument& doc, Strategy strategy,
                                    const DocumentCandidates* candidates = nullptr);

/// Sanitizes documents on a pool of `workers` threads; output order follows
/// input order. A failing document stops the run and its error is rethrown
/// once all workers have finished.
std::vector<SanitizedDocument> sanitize_corpus(const Sanitizer& sanitizer,
                                               std::span<const AnnotatedDocument> docs,
                                               std::size_t workers = 1);

struct SelectionRow {
  std::string label;               // entity label or "ALL"
  std::vector<std::size_t> counts;  // ranks 1..m, then FALLBACK
  std::size_t total = 0;

  double percentage(std::size_t column) const;
};

struct SelectionTable {
  std::size_t m = 0;
  std::vector<SelectionRow> rows;
};

/// Frequency of the chosen rank per label over selection decisions (first
/// mentions whose candidates did not come from the direct-identifier rule).
/// Labels without decisions are omitted; an empty corpus gives no rows.
SelectionTable selection_statistics(std::span<const SanitizedEntry> entries, std::size_t m = 5);

std::string render_selection_table(const SelectionTable& table);

}  // namespace intact

#endif  // INTACT_PIPELINE_HPP_
