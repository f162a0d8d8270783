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

#include "intact/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "intact/date_generalizer.hpp"
#include "intact/errors.hpp"
#include "intact/random.hpp"

namespace intact {

namespace {

std::uint64_t request_seed(std::uint64_t base, const std::string& doc_id, std::size_t span,
                           std::size_t step) {
  return derive_seed(base, fnv1a(doc_id) ^ (span * 0x9E3779B97F4A7C15ULL) ^ (step << 48));
}

ReplacementRecord fallback_record(std::size_t index, CandidateList list, std::string label) {
  ReplacementRecord r;
  r.span_index = index;
  r.candidate_list = std::move(list);
  r.selected = label;
  r.fallback_label = std::move(label);
  return r;
}

ReplacementRecord ranked_record(std::size_t index, CandidateList list, std::size_t rank) {
  ReplacementRecord r;
  r.span_index = index;
  r.selected = list.candidates.at(rank - 1);
  r.selected_rank = rank;
  r.candidate_list = std::move(list);
  return r;
}

}  // namespace

Sanitizer::Sanitizer(PipelineConfig config, ChatModel& generator, ChatModel* attacker)
    : config_(std::move(config)), generator_(generator), attacker_(attacker ? *attacker : generator) {}

CandidateList Sanitizer::generate_for_span(const AnnotatedDocument& doc, std::size_t index,
                                           const SentenceContext& ctx) const {
  const PiiSpan& span = doc.spans()[index];
  const auto messages = build_generation_prompt(span, ctx);
  const int attempts = 1 + std::max(0, config_.generation_retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    ChatRequest request;
    request.model_id = config_.generation.model_id;
    request.messages = messages;
    request.temperature = config_.generation.temperature;
    request.max_new_tokens = config_.generation.max_new_tokens;
    request.seed = request_seed(config_.rng_seed, doc.doc_id(), index, attempt);
    request.request_id = fmt::format("{}:{}:gen{}", doc.doc_id(), index, attempt);
    const std::string reply = generator_.chat(request);
    try {
      CandidateList list;
      list.source = CandidateSource::kLlm;
      list.candidates = parse_candidates(reply, config_.generation.m);
      return list;
    } catch (const MalformedReplyError& e) {
      spdlog::warn("{}: {}", request.request_id, e.what());
    }
  }
  spdlog::warn("document '{}' span {}: no usable candidates, falling back to the label",
               doc.doc_id(), index);
  return CandidateList{};
}

DocumentCandidates Sanitizer::generate_candidates(const AnnotatedDocument& doc) const {
  const auto& spans = doc.spans();
  std::vector<ByteRange> protect;
  protect.reserve(spans.size());
  for (const auto& s : spans) protect.push_back({s.byte_begin, s.byte_end});
  const auto sentences = split_sentences(doc.text(), protect);

  LabelCounters counters;
  DocumentCandidates out;
  out.lists.resize(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::size_t first = doc.first_mention(i);
    if (first != i) {
      out.lists[i] = out.lists[first];
      continue;
    }
    const PiiSpan& span = spans[i];
    if (is_direct_identifier(span.label)) {
      out.lists[i] = generalize_direct_identifier(span, counters);
      continue;
    }
    if (span.label == EntityLabel::kDatetime) {
      if (auto rule = generalize_date(span.surface, config_.generation.m)) {
        out.lists[i] = std::move(*rule);
        continue;
      }
    }
    const auto ctx = sentence_context(doc.text(), sentences, {span.byte_begin, span.byte_end});
    out.lists[i] = generate_for_span(doc, i, ctx);
  }
  return out;
}

GuessSet Sanitizer::attack(const AnnotatedDocument& doc, std::span<const SpanDraft> drafts,
                           std::size_t target, std::size_t candidate_index,
                           const std::string& candidate) const {
  const std::string context = render_attack_context(doc, drafts, target, candidate);
  ChatRequest request;
  request.model_id = config_.attack.model_id;
  request.messages = build_attack_prompt(context, candidate);
  request.temperature = config_.attack.temperature;
  request.max_new_tokens = config_.attack.max_new_tokens;
  request.seed = request_seed(config_.rng_seed, doc.doc_id(), target, 100 + candidate_index);
  request.request_id = fmt::format("{}:{}:atk{}", doc.doc_id(), target, candidate_index + 1);
  return parse_guesses(attacker_.chat(request), config_.attack.p, candidate_index);
}

SanitizedDocument Sanitizer::select(const AnnotatedDocument& doc,
                                    const DocumentCandidates& candidates) const {
  const auto& spans = doc.spans();
  if (candidates.lists.size() != spans.size()) {
    throw MissingCandidatesError(fmt::format("document '{}': {} candidate lists for {} spans",
                                             doc.doc_id(), candidates.lists.size(), spans.size()));
  }

  // The draft D': rule replacements are final from the start, everything
  // else shows its most specific candidate until selected.
  LabelCounters fallbacks;
  std::vector<SpanDraft> drafts(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& list = candidates.lists[i];
    if (list.candidates.empty()) {
      drafts[i].first_candidate =
          fallbacks.assign(spans[i].label, spans[doc.first_mention(i)].entity_id);
      drafts[i].selected = drafts[i].first_candidate;
    } else {
      drafts[i].first_candidate = list.candidates.front();
      if (list.source == CandidateSource::kDirectIdRule) drafts[i].selected = list.candidates.front();
    }
  }

  std::vector<ReplacementRecord> records(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::size_t first = doc.first_mention(i);
    const CandidateList& list = candidates.lists[i];
    if (first != i) {
      records[i] = records[first];
      records[i].span_index = i;
      records[i].guess_sets.clear();
      drafts[i].selected = records[i].selected;
      continue;
    }
    if (list.candidates.empty()) {
      records[i] = fallback_record(i, list, *drafts[i].selected);
      continue;
    }
    if (list.source == CandidateSource::kDirectIdRule) {
      records[i] = ranked_record(i, list, 1);
      continue;
    }

    std::vector<std::size_t> siblings;
    for (std::size_t k = i + 1; k < spans.size(); ++k) {
      if (doc.first_mention(k) == i) siblings.push_back(k);
    }

    ReplacementRecord record;
    record.span_index = i;
    record.candidate_list = list;
    for (std::size_t j = 0; j < list.candidates.size(); ++j) {
      const std::string& c = list.candidates[j];
      // Other mentions of the entity will carry the same replacement.
      for (std::size_t k : siblings) drafts[k].selected = c;
      GuessSet guesses = attack(doc, drafts, i, j, c);
      const bool risky = risky_replace(spans[i], guesses.guesses, config_.match);
      record.guess_sets.push_back(std::move(guesses));
      if (!risky && !record.selected_rank) {
        record.selected_rank = j + 1;
        record.selected = c;
        if (config_.early_exit) break;
      }
    }
    if (!record.selected_rank) {
      record.selected = fallbacks.assign(spans[i].label, spans[i].entity_id);
      record.fallback_label = record.selected;
    }
    drafts[i].selected = record.selected;
    for (std::size_t k : siblings) drafts[k].selected = record.selected;
    records[i] = std::move(record);
  }
  return apply_replacements(doc, std::move(records), Strategy::kIntact);
}

SanitizedDocument Sanitizer::sanitize(const AnnotatedDocument& doc) const {
  switch (config_.strategy) {
    case Strategy::kSuppression:
    case Strategy::kEntityType:
      return sanitize_baseline(doc, config_.strategy);
    case Strategy::kLeastSpecific:
    case Strategy::kMostSpecific: {
      const auto lists = generate_candidates(doc);
      return sanitize_baseline(doc, config_.strategy, &lists);
    }
    case Strategy::kIntact:
      break;
  }
  return select(doc, generate_candidates(doc));
}

SanitizedDocument sanitize_baseline(const AnnotatedDocument& doc, Strategy strategy,
                                    const DocumentCandidates* candidates) {
  const auto& spans = doc.spans();
  std::vector<ReplacementRecord> records;
  records.reserve(spans.size());

  if (strategy == Strategy::kSuppression || strategy == Strategy::kEntityType) {
    for (std::size_t i = 0; i < spans.size(); ++i) {
      const std::string text =
          strategy == Strategy::kSuppression ? "" : std::string(to_string(spans[i].label));
      records.push_back(fallback_record(i, {}, text));
    }
    return apply_replacements(doc, std::move(records), strategy);
  }
  if (strategy == Strategy::kIntact) {
    throw ConfigError("sanitize_baseline does not run the intact strategy");
  }
  if (candidates == nullptr || candidates->lists.size() != spans.size()) {
    throw MissingCandidatesError(fmt::format("document '{}': {} needs one candidate list per span",
                                             doc.doc_id(), to_string(strategy)));
  }
  LabelCounters fallbacks;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const CandidateList& list = candidates->lists[i];
    if (list.candidates.empty()) {
      records.push_back(fallback_record(
          i, list, fallbacks.assign(spans[i].label, spans[doc.first_mention(i)].entity_id)));
    } else if (list.source == CandidateSource::kDirectIdRule || strategy == Strategy::kMostSpecific) {
      records.push_back(ranked_record(i, list, 1));
    } else {
      records.push_back(ranked_record(i, list, list.candidates.size()));
    }
  }
  return apply_replacements(doc, std::move(records), strategy);
}

std::vector<SanitizedDocument> sanitize_corpus(const Sanitizer& sanitizer,
                                               std::span<const AnnotatedDocument> docs,
                                               std::size_t workers) {
  std::vector<SanitizedDocument> out(docs.size());
  std::vector<std::exception_ptr> errors(docs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= docs.size()) return;
      try {
        out[i] = sanitizer.sanitize(docs[i]);
        spdlog::debug("sanitized '{}'", docs[i].doc_id());
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };

  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(docs.size(), 1));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (errors[i]) {
      spdlog::error("document '{}' failed; no output is written for it", docs[i].doc_id());
      std::rethrow_exception(errors[i]);
    }
  }
  return out;
}

double SelectionRow::percentage(std::size_t column) const {
  if (total == 0 || column >= counts.size()) return 0.0;
  return 100.0 * static_cast<double>(counts[column]) / static_cast<double>(total);
}

SelectionTable selection_statistics(std::span<const SanitizedEntry> entries, std::size_t m) {
  SelectionTable table;
  table.m = m;
  std::map<EntityLabel, SelectionRow> by_label;
  SelectionRow all{"ALL", std::vector<std::size_t>(m + 1, 0), 0};

  for (const auto& entry : entries) {
    const auto& spans = entry.original.spans();
    for (const auto& record : entry.sanitized.records) {
      const std::size_t i = record.span_index;
      if (i >= spans.size() || entry.original.first_mention(i) != i) continue;
      if (record.candidate_list.source == CandidateSource::kDirectIdRule) continue;
      if (entry.sanitized.strategy == Strategy::kSuppression ||
          entry.sanitized.strategy == Strategy::kEntityType) {
        continue;
      }
      std::size_t column = m;
      if (record.selected_rank && *record.selected_rank <= m) column = *record.selected_rank - 1;
      auto [it, inserted] = by_label.try_emplace(spans[i].label);
      if (inserted) {
        it->second.label = std::string(to_string(spans[i].label));
        it->second.counts.assign(m + 1, 0);
      }
      ++it->second.counts[column];
      ++it->second.total;
      ++all.counts[column];
      ++all.total;
    }
  }
  for (EntityLabel label : kAllLabels) {
    if (auto it = by_label.find(label); it != by_label.end()) table.rows.push_back(it->second);
  }
  if (all.total > 0) table.rows.push_back(std::move(all));
  return table;
}

std::string render_selection_table(const SelectionTable& table) {
  std::string out = fmt::format("{:<10}", "label");
  for (std::size_t r = 1; r <= table.m; ++r) out += fmt::format("{:>14}", fmt::format("rank {}", r));
  out += fmt::format("{:>14}{:>8}\n", "FALLBACK", "total");
  for (const auto& row : table.rows) {
    out += fmt::format("{:<10}", row.label);
    for (std::size_t c = 0; c < row.counts.size(); ++c) {
      out += fmt::format("{:>14}", fmt::format("{} ({:.1f}%)", row.counts[c], row.percentage(c)));
    }
    out += fmt::format("{:>8}\n", row.total);
  }
  return out;
}

}  // namespace intact
