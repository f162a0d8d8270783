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

#include "intact/document.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "intact/errors.hpp"
#include "intact/utf8.hpp"

namespace intact {

using json = nlohmann::json;

namespace {

constexpr std::array<std::string_view, 8> kLabelNames = {"CODE",     "ORG",    "DATETIME", "LOC",
                                                         "QUANTITY", "PERSON", "DEM",      "MISC"};

std::string where(std::string_view doc_id, const SpanAnnotation& a) {
  std::ostringstream os;
  os << "document '" << doc_id << "', span [" << a.start << "," << a.end << ")";
  return os.str();
}

bool is_horizontal_space(char c) { return c == ' ' || c == '\t'; }

bool is_closing_punct(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?': case ')': case ']': case '}':
      return true;
    default:
      return false;
  }
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

void trim_trailing_horizontal(std::string& s) {
  while (!s.empty() && is_horizontal_space(s.back())) s.pop_back();
}

json rank_to_json(const std::optional<std::size_t>& rank) {
  if (rank) return *rank;
  return "FALLBACK";
}

}  // namespace

std::string_view to_string(EntityLabel label) { return kLabelNames[static_cast<int>(label)]; }

std::optional<EntityLabel> parse_label(std::string_view name) {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == name) return static_cast<EntityLabel>(i);
  }
  return std::nullopt;
}

std::string_view to_string(CandidateSource source) {
  switch (source) {
    case CandidateSource::kLlm: return "LLM";
    case CandidateSource::kDateRule: return "DATE_RULE";
    case CandidateSource::kDirectIdRule: return "DIRECT_ID_RULE";
  }
  return "LLM";
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kIntact: return "intact";
    case Strategy::kSuppression: return "suppression";
    case Strategy::kEntityType: return "entity_type";
    case Strategy::kLeastSpecific: return "least_specific";
    case Strategy::kMostSpecific: return "most_specific";
  }
  return "intact";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  std::string lower = utf8::to_lower(name);
  std::replace(lower.begin(), lower.end(), '-', '_');
  for (Strategy s : {Strategy::kIntact, Strategy::kSuppression, Strategy::kEntityType,
                     Strategy::kLeastSpecific, Strategy::kMostSpecific}) {
    if (to_string(s) == lower) return s;
  }
  return std::nullopt;
}

AnnotatedDocument AnnotatedDocument::create(std::string doc_id, std::string text,
                                            std::vector<SpanAnnotation> annotations,
                                            std::optional<std::string> individual_id) {
  AnnotatedDocument doc;
  doc.doc_id_ = std::move(doc_id);
  doc.text_ = std::move(text);
  doc.individual_id_ = std::move(individual_id);

  std::stable_sort(annotations.begin(), annotations.end(),
                   [](const SpanAnnotation& a, const SpanAnnotation& b) { return a.start < b.start; });

  const auto bounds = utf8::boundaries(doc.text_);
  const std::size_t length = bounds.size() - 1;

  std::map<std::string, std::size_t> mention_counts;
  std::unordered_map<std::string, std::size_t> first_index;
  std::unordered_map<std::string, EntityLabel> entity_labels;

  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const SpanAnnotation& a = annotations[i];
    const auto label = parse_label(a.label);
    if (!label) throw InvariantError(where(doc.doc_id_, a) + ": unknown label '" + a.label + "'");
    if (a.start >= a.end || a.end > length) {
      throw InvariantError(where(doc.doc_id_, a) + ": offsets out of range (text length " +
                           std::to_string(length) + ")");
    }
    if (i > 0 && a.start < annotations[i - 1].end) {
      throw InvariantError(where(doc.doc_id_, a) + ": overlaps span [" +
                           std::to_string(annotations[i - 1].start) + "," +
                           std::to_string(annotations[i - 1].end) + ")");
    }

    PiiSpan span;
    span.start = a.start;
    span.end = a.end;
    span.byte_begin = bounds[a.start];
    span.byte_end = bounds[a.end];
    span.surface = doc.text_.substr(span.byte_begin, span.byte_end - span.byte_begin);
    span.label = *label;
    span.entity_id = a.entity_id ? *a.entity_id : std::string(to_string(*label)) + ":" + span.surface;

    if (auto it = entity_labels.find(span.entity_id); it != entity_labels.end()) {
      if (it->second != span.label) {
        throw InvariantError(where(doc.doc_id_, a) + ": entity '" + span.entity_id +
                             "' mixes labels " + std::string(to_string(it->second)) + " and " +
                             std::string(to_string(span.label)));
      }
    } else {
      entity_labels.emplace(span.entity_id, span.label);
      first_index.emplace(span.entity_id, doc.spans_.size());
    }
    span.mention_index = mention_counts[span.entity_id]++;
    doc.first_mention_.push_back(first_index.at(span.entity_id));
    doc.spans_.push_back(std::move(span));
  }
  return doc;
}

bool record_is_consistent(const ReplacementRecord& record) {
  if (record.is_fallback()) {
    return record.fallback_label.has_value() && record.selected == *record.fallback_label;
  }
  const std::size_t rank = *record.selected_rank;
  const auto& c = record.candidate_list.candidates;
  return rank >= 1 && rank <= c.size() && record.selected == c[rank - 1];
}

std::string splice(const AnnotatedDocument& doc, const std::vector<std::string>& replacements) {
  const std::string& text = doc.text();
  const auto& spans = doc.spans();
  if (replacements.size() != spans.size()) {
    throw MissingRecordError("document '" + doc.doc_id() + "': " +
                             std::to_string(replacements.size()) + " replacements for " +
                             std::to_string(spans.size()) + " spans");
  }
  std::string out;
  out.reserve(text.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    out.append(text, cursor, spans[i].byte_begin - cursor);
    cursor = spans[i].byte_end;
    if (!replacements[i].empty()) {
      out += replacements[i];
      continue;
    }
    // Suppression: join the neighbours with one whitespace run.
    const std::size_t limit = i + 1 < spans.size() ? spans[i + 1].byte_begin : text.size();
    std::size_t ws_end = cursor;
    while (ws_end < limit && is_ascii_space(text[ws_end])) ++ws_end;
    const bool before_is_space = out.empty() || is_ascii_space(out.back());
    const bool at_end = ws_end == text.size();
    if (ws_end > cursor) {
      const bool has_newline =
          std::find(text.begin() + cursor, text.begin() + ws_end, '\n') != text.begin() + ws_end;
      if (out.empty()) {
        cursor = ws_end;
      } else if (before_is_space) {
        if (has_newline) {
          trim_trailing_horizontal(out);
        } else {
          cursor = ws_end;
          if (cursor < text.size() && is_closing_punct(text[cursor])) trim_trailing_horizontal(out);
        }
      }
    } else if (!out.empty() && is_horizontal_space(out.back()) &&
               (at_end || (cursor < text.size() && is_closing_punct(text[cursor])))) {
      trim_trailing_horizontal(out);
    }
    if (at_end && ws_end == cursor) trim_trailing_horizontal(out);
  }
  out.append(text, cursor, std::string::npos);
  return out;
}

SanitizedDocument apply_replacements(const AnnotatedDocument& doc,
                                     std::vector<ReplacementRecord> records, Strategy strategy) {
  if (records.size() != doc.spans().size()) {
    throw MissingRecordError("document '" + doc.doc_id() + "': " + std::to_string(records.size()) +
                             " records for " + std::to_string(doc.spans().size()) + " spans");
  }
  std::vector<std::string> replacements;
  replacements.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].span_index != i) {
      throw MissingRecordError("document '" + doc.doc_id() + "': record " + std::to_string(i) +
                               " refers to span " + std::to_string(records[i].span_index));
    }
    replacements.push_back(records[i].selected);
  }
  SanitizedDocument out;
  out.doc_id = doc.doc_id();
  out.text = splice(doc, replacements);
  out.records = std::move(records);
  out.strategy = strategy;
  return out;
}

namespace {

AnnotatedDocument document_from_json(const json& j, std::string_view source, std::size_t line_no) {
  auto fail = [&](const std::string& what) {
    return ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };
  if (!j.is_object()) throw fail("expected a JSON object");
  if (!j.contains("doc_id") || !j["doc_id"].is_string()) throw fail("missing string field 'doc_id'");
  if (!j.contains("text") || !j["text"].is_string()) throw fail("missing string field 'text'");
  std::vector<SpanAnnotation> annotations;
  if (j.contains("annotations")) {
    if (!j["annotations"].is_array()) throw fail("'annotations' must be an array");
    for (const auto& a : j["annotations"]) {
      if (!a.is_object() || !a.contains("start") || !a.contains("end") || !a.contains("label") ||
          !a["start"].is_number_unsigned() || !a["end"].is_number_unsigned() ||
          !a["label"].is_string()) {
        throw fail("annotation needs non-negative 'start', 'end' and string 'label'");
      }
      SpanAnnotation ann;
      ann.start = a["start"].get<std::size_t>();
      ann.end = a["end"].get<std::size_t>();
      ann.label = a["label"].get<std::string>();
      if (a.contains("entity_id") && !a["entity_id"].is_null()) {
        if (!a["entity_id"].is_string()) throw fail("'entity_id' must be a string");
        ann.entity_id = a["entity_id"].get<std::string>();
      }
      annotations.push_back(std::move(ann));
    }
  }
  std::optional<std::string> individual;
  if (j.contains("individual_id") && !j["individual_id"].is_null()) {
    if (!j["individual_id"].is_string()) throw fail("'individual_id' must be a string");
    individual = j["individual_id"].get<std::string>();
  }
  return AnnotatedDocument::create(j["doc_id"].get<std::string>(), j["text"].get<std::string>(),
                                   std::move(annotations), std::move(individual));
}

json document_to_json(const AnnotatedDocument& doc) {
  json j;
  j["doc_id"] = doc.doc_id();
  j["text"] = doc.text();
  json anns = json::array();
  for (const PiiSpan& s : doc.spans()) {
    anns.push_back({{"start", s.start},
                    {"end", s.end},
                    {"label", std::string(to_string(s.label))},
                    {"entity_id", s.entity_id}});
  }
  j["annotations"] = std::move(anns);
  if (doc.individual_id()) j["individual_id"] = *doc.individual_id();
  return j;
}

template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    fn(line, line_no);
  }
}

json parse_line(const std::string& line, std::string_view source, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
  }
}

}  // namespace

std::vector<AnnotatedDocument> read_corpus(std::istream& in, std::string_view source) {
  std::vector<AnnotatedDocument> docs;
  std::unordered_map<std::string, std::size_t> seen;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    AnnotatedDocument doc = document_from_json(parse_line(line, source, line_no), source, line_no);
    if (!seen.emplace(doc.doc_id(), line_no).second) {
      throw InvariantError(std::string(source) + ":" + std::to_string(line_no) +
                           ": duplicate doc_id '" + doc.doc_id() + "'");
    }
    docs.push_back(std::move(doc));
  });
  return docs;
}

std::vector<AnnotatedDocument> ingest_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file '" + path.string() + "'");
  return read_corpus(in, path.string());
}

std::string serialize_document(const AnnotatedDocument& doc) { return document_to_json(doc).dump(); }

void write_corpus(std::ostream& out, const std::vector<AnnotatedDocument>& docs) {
  for (const auto& d : docs) out << serialize_document(d) << '\n';
}

std::string serialize_sanitized(const AnnotatedDocument& original, const SanitizedDocument& doc) {
  json j = document_to_json(original);
  j["strategy"] = std::string(to_string(doc.strategy));
  j["sanitized_text"] = doc.text;
  json records = json::array();
  for (const ReplacementRecord& r : doc.records) {
    const PiiSpan& span = original.spans().at(r.span_index);
    json guesses = json::array();
    for (const GuessSet& g : r.guess_sets) {
      guesses.push_back({{"candidate", g.candidate_index + 1}, {"guesses", g.guesses}});
    }
    json rec = {{"start", span.start},
                {"end", span.end},
                {"label", std::string(to_string(span.label))},
                {"source", std::string(to_string(r.candidate_list.source))},
                {"candidates", r.candidate_list.candidates},
                {"selected", r.selected},
                {"selected_rank", rank_to_json(r.selected_rank)},
                {"guesses", std::move(guesses)}};
    if (r.fallback_label) rec["fallback_label"] = *r.fallback_label;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  return j.dump();
}

void write_sanitized_corpus(std::ostream& out, const std::vector<SanitizedEntry>& entries) {
  for (const auto& e : entries) out << serialize_sanitized(e.original, e.sanitized) << '\n';
}

std::vector<SanitizedEntry> read_sanitized_corpus(std::istream& in, std::string_view source) {
  std::vector<SanitizedEntry> out;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    const json j = parse_line(line, source, line_no);
    auto fail = [&](const std::string& what) {
      return ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
    };
    AnnotatedDocument original = document_from_json(j, source, line_no);
    if (!j.contains("records") || !j["records"].is_array()) throw fail("missing array 'records'");
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_offsets;
    for (std::size_t i = 0; i < original.spans().size(); ++i) {
      by_offsets[{original.spans()[i].start, original.spans()[i].end}] = i;
    }
    std::vector<ReplacementRecord> records;
    for (const auto& r : j["records"]) {
      ReplacementRecord rec;
      try {
        const auto key = std::make_pair(r.at("start").get<std::size_t>(), r.at("end").get<std::size_t>());
        auto it = by_offsets.find(key);
        if (it == by_offsets.end()) throw fail("record does not match any annotation");
        rec.span_index = it->second;
        rec.candidate_list.candidates = r.at("candidates").get<std::vector<std::string>>();
        if (r.contains("source")) {
          const auto src = r["source"].get<std::string>();
          rec.candidate_list.source = src == "DATE_RULE"        ? CandidateSource::kDateRule
                                      : src == "DIRECT_ID_RULE" ? CandidateSource::kDirectIdRule
                                                                : CandidateSource::kLlm;
        }
        rec.selected = r.at("selected").get<std::string>();
        const auto& rank = r.at("selected_rank");
        if (rank.is_string()) {
          if (rank.get<std::string>() != "FALLBACK") throw fail("bad selected_rank");
        } else {
          rec.selected_rank = rank.get<std::size_t>();
        }
        if (r.contains("fallback_label")) rec.fallback_label = r["fallback_label"].get<std::string>();
        if (r.contains("guesses")) {
          for (const auto& g : r["guesses"]) {
            rec.guess_sets.push_back({g.at("candidate").get<std::size_t>() - 1,
                                      g.at("guesses").get<std::vector<std::string>>()});
          }
        }
      } catch (const json::exception& e) {
        throw fail(std::string("malformed record: ") + e.what());
      }
      records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(),
              [](const auto& a, const auto& b) { return a.span_index < b.span_index; });
    Strategy strategy = Strategy::kIntact;
    if (j.contains("strategy")) {
      auto s = parse_strategy(j["strategy"].get<std::string>());
      if (!s) throw fail("unknown strategy");
      strategy = *s;
    }
    SanitizedDocument sanitized = apply_replacements(original, std::move(records), strategy);
    if (j.contains("sanitized_text") && j["sanitized_text"].get<std::string>() != sanitized.text) {
      throw InvariantError(std::string(source) + ":" + std::to_string(line_no) + ": document '" +
                           original.doc_id() + "': sanitized_text does not match its records");
    }
    out.push_back({std::move(original), std::move(sanitized)});
  });
  return out;
}

std::vector<SanitizedEntry> read_sanitized_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sanitized corpus '" + path.string() + "'");
  return read_sanitized_corpus(in, path.string());
}

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace intact
