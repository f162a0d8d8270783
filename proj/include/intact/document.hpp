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

#ifndef INTACT_DOCUMENT_HPP_
#define INTACT_DOCUMENT_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace intact {

enum class EntityLabel { kCode, kOrg, kDatetime, kLoc, kQuantity, kPerson, kDem, kMisc };

inline constexpr std::array<EntityLabel, 8> kAllLabels = {
    EntityLabel::kCode,     EntityLabel::kOrg,    EntityLabel::kDatetime, EntityLabel::kLoc,
    EntityLabel::kQuantity, EntityLabel::kPerson, EntityLabel::kDem,      EntityLabel::kMisc};

std::string_view to_string(EntityLabel label);
std::optional<EntityLabel> parse_label(std::string_view name);

/// CODE and PERSON identify an individual on their own; the remaining
/// labels are quasi-identifiers.
constexpr bool is_direct_identifier(EntityLabel label) {
  return label == EntityLabel::kCode || label == EntityLabel::kPerson;
}

/// A PII span. `start`/`end` are Unicode scalar offsets into the document
/// text (the corpus coordinates); `byte_begin`/`byte_end` address the same
/// slice in the UTF-8 buffer.
struct PiiSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  EntityLabel label = EntityLabel::kMisc;
  std::string entity_id;
  std::size_t mention_index = 0;
  std::size_t byte_begin = 0;
  std::size_t byte_end = 0;
};

/// Annotation as it appears in a corpus file, before validation.
struct SpanAnnotation {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string label;
  std::optional<std::string> entity_id;
};

class AnnotatedDocument {
 public:
  /// Validates the annotations against `text` and builds the document.
  /// Spans are sorted by start; overlaps, unknown labels, out-of-range
  /// offsets and label disagreement inside an entity raise InvariantError.
  static AnnotatedDocument create(std::string doc_id, std::string text,
                                  std::vector<SpanAnnotation> annotations,
                                  std::optional<std::string> individual_id = std::nullopt);

  const std::string& doc_id() const { return doc_id_; }
  const std::string& text() const { return text_; }
  const std::vector<PiiSpan>& spans() const { return spans_; }
  const std::optional<std::string>& individual_id() const { return individual_id_; }

  /// Index of the first mention of the entity `spans()[i]` belongs to.
  std::size_t first_mention(std::size_t i) const { return first_mention_[i]; }

 private:
  AnnotatedDocument() = default;

  std::string doc_id_;
  std::string text_;
  std::vector<PiiSpan> spans_;
  std::vector<std::size_t> first_mention_;
  std::optional<std::string> individual_id_;
};

enum class CandidateSource { kLlm, kDateRule, kDirectIdRule };

std::string_view to_string(CandidateSource source);

struct CandidateList {
  std::vector<std::string> candidates;  // most specific first
  CandidateSource source = CandidateSource::kLlm;
};

struct GuessSet {
  std::size_t candidate_index = 0;  // 0-based index into the candidate list
  std::vector<std::string> guesses;
};

struct ReplacementRecord {
  std::size_t span_index = 0;
  CandidateList candidate_list;
  std::vector<GuessSet> guess_sets;
  std::string selected;
  /// 1-based rank of the selected candidate; nullopt marks the fallback.
  std::optional<std::size_t> selected_rank;
  std::optional<std::string> fallback_label;

  bool is_fallback() const { return !selected_rank.has_value(); }
};

/// Checks the selected/selected_rank/fallback_label consistency rule.
bool record_is_consistent(const ReplacementRecord& record);

enum class Strategy { kIntact, kSuppression, kEntityType, kLeastSpecific, kMostSpecific };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);

struct SanitizedDocument {
  std::string doc_id;
  std::string text;
  std::vector<ReplacementRecord> records;
  Strategy strategy = Strategy::kIntact;
};

/// Rewrites `doc.text()` with one replacement per span, left to right.
/// An empty replacement removes the span and joins its neighbours with a
/// single whitespace run; whitespace in front of closing punctuation or at
/// either end of the text is dropped.
std::string splice(const AnnotatedDocument& doc, const std::vector<std::string>& replacements);

SanitizedDocument apply_replacements(const AnnotatedDocument& doc,
                                     std::vector<ReplacementRecord> records,
                                     Strategy strategy = Strategy::kIntact);

// Corpus files: one JSON object per line.

std::vector<AnnotatedDocument> read_corpus(std::istream& in, std::string_view source = "<stream>");
std::vector<AnnotatedDocument> ingest_corpus(const std::filesystem::path& path);

std::string serialize_document(const AnnotatedDocument& doc);
void write_corpus(std::ostream& out, const std::vector<AnnotatedDocument>& docs);

/// A sanitized corpus line holds the original document plus the records
/// and the rewritten text.
struct SanitizedEntry {
  AnnotatedDocument original;
  SanitizedDocument sanitized;
};

std::string serialize_sanitized(const AnnotatedDocument& original, const SanitizedDocument& doc);
void write_sanitized_corpus(std::ostream& out, const std::vector<SanitizedEntry>& entries);
std::vector<SanitizedEntry> read_sanitized_corpus(std::istream& in,
                                                  std::string_view source = "<stream>");
std::vector<SanitizedEntry> read_sanitized_corpus(const std::filesystem::path& path);

/// Writes `content` to a sibling temporary file and renames it into place.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace intact

#endif  // INTACT_DOCUMENT_HPP_
