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

#include "intact/text_analysis.hpp"

#include <algorithm>
#include <array>

#include "intact/lexicon.hpp"
#include "intact/utf8.hpp"

namespace intact {

namespace {

constexpr std::array<std::string_view, 56> kAbbreviations = {
    "mr",   "mrs",  "ms",    "dr",    "prof", "st",   "no",   "nos",  "art",  "arts",
    "para", "paras", "v",    "vs",    "e.g",  "i.e",  "etc",  "jr",   "sr",   "inc",
    "ltd",  "co",   "corp",  "gen",   "col",  "lt",   "sgt",  "rev",  "hon",  "mt",
    "fig",  "figs", "vol",   "ed",    "eds",  "pp",   "approx", "dept", "univ", "jan",
    "feb",  "mar",  "apr",   "jun",   "jul",  "aug",  "sep",  "sept", "oct",  "nov",
    "dec",  "cf",   "al",    "ibid",  "op",   "seq"};

constexpr std::array<std::string_view, 12> kMonths = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

bool is_terminal(char32_t c) { return c == '.' || c == '?' || c == '!' || c == 0x2026; }

bool is_closer(char32_t c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == 0x201D || c == 0x2019;
}

bool is_opener(char32_t c) {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == 0x201C || c == 0x2018;
}

bool is_abbreviation(std::string_view text, std::size_t period_pos) {
  std::size_t begin = period_pos;
  while (begin > 0) {
    const char c = text[begin - 1];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '.') {
      --begin;
    } else {
      break;
    }
  }
  if (begin == period_pos) return false;
  const std::string word = utf8::to_lower(text.substr(begin, period_pos - begin));
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

const Lexicon& lexicon() { return Lexicon::english(); }

bool is_month(std::string_view w) {
  return std::find(kMonths.begin(), kMonths.end(), w) != kMonths.end();
}

// Tokens kept for n-gram comparison: no stopwords, no high-frequency lemmas.
std::vector<std::string> ngram_tokens(std::string_view span, const MatchConfig& cfg) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(span)) {
    std::string lower = utf8::to_lower(t.text);
    if (lexicon().is_stopword(lower)) continue;
    if (is_alphabetic(lower)) {
      auto rank = lexicon().frequency_rank(lexicon().lemma(lower));
      if (rank && *rank <= cfg.high_freq_rank_cutoff) continue;
    }
    out.push_back(std::move(lower));
  }
  return out;
}

void add_ngrams(std::set<std::string>& out, std::string_view token, int n) {
  const auto bounds = utf8::boundaries(token);
  const std::size_t len = bounds.size() - 1;
  if (len == 0) return;
  if (len < static_cast<std::size_t>(n)) {
    out.emplace(token);
    return;
  }
  for (std::size_t i = 0; i + n <= len; ++i) {
    out.emplace(token.substr(bounds[i], bounds[i + n] - bounds[i]));
  }
}

template <typename Set>
bool intersects(const Set& a, const Set& b) {
  for (const auto& x : a) {
    if (b.count(x)) return true;
  }
  return false;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::size_t start = std::string_view::npos;
  while (pos < text.size()) {
    const std::size_t here = pos;
    const char32_t cp = utf8::decode(text, pos);
    const bool word = utf8::is_letter(cp) || utf8::is_digit(cp);
    if (word && start == std::string_view::npos) start = here;
    if (!word && start != std::string_view::npos) {
      tokens.push_back({start, here, std::string(text.substr(start, here - start))});
      start = std::string_view::npos;
    }
  }
  if (start != std::string_view::npos) {
    tokens.push_back({start, text.size(), std::string(text.substr(start))});
  }
  return tokens;
}

bool is_alphabetic(std::string_view token) {
  if (token.empty()) return false;
  std::size_t pos = 0;
  while (pos < token.size()) {
    if (!utf8::is_letter(utf8::decode(token, pos))) return false;
  }
  return true;
}

bool is_title_case(std::string_view token) {
  if (token.empty()) return false;
  std::size_t pos = 0;
  if (!utf8::is_upper(utf8::decode(token, pos))) return false;
  while (pos < token.size()) {
    const char32_t cp = utf8::decode(token, pos);
    if (!utf8::is_letter(cp) || utf8::is_upper(cp)) return false;
  }
  return true;
}

std::vector<ByteRange> split_sentences(std::string_view text,
                                       std::span<const ByteRange> protected_spans) {
  std::vector<ByteRange> ranges;
  std::size_t sentence_begin = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t here = pos;
    const char32_t cp = utf8::decode(text, pos);

    // Blank lines always separate sentences.
    if (cp == '\n') {
      std::size_t look = pos;
      while (look < text.size() && (text[look] == ' ' || text[look] == '\t' || text[look] == '\r')) ++look;
      if (look < text.size() && text[look] == '\n') {
        while (look < text.size() && utf8::is_space(static_cast<unsigned char>(text[look]))) ++look;
        if (look < text.size()) {
          ranges.push_back({sentence_begin, look});
          sentence_begin = look;
        }
        pos = look;
      }
      continue;
    }
    if (!is_terminal(cp)) continue;
    if (cp == '.' && is_abbreviation(text, here)) continue;

    std::size_t look = pos;
    while (look < text.size()) {
      std::size_t next = look;
      const char32_t c = utf8::decode(text, next);
      if (!is_terminal(c) && !is_closer(c)) break;
      look = next;
    }
    const std::size_t after_punct = look;
    while (look < text.size()) {
      std::size_t next = look;
      if (!utf8::is_space(utf8::decode(text, next))) break;
      look = next;
    }
    if (look == text.size()) break;
    if (look == after_punct) continue;  // "3.5", "e.g.x"
    std::size_t next = look;
    const char32_t first = utf8::decode(text, next);
    if (!(utf8::is_upper(first) || utf8::is_digit(first) || is_opener(first))) continue;
    ranges.push_back({sentence_begin, look});
    sentence_begin = look;
    pos = look;
  }
  if (sentence_begin < text.size() || ranges.empty()) ranges.push_back({sentence_begin, text.size()});

  for (const ByteRange& span : protected_spans) {
    auto first = std::find_if(ranges.begin(), ranges.end(),
                              [&](const ByteRange& r) { return span.begin < r.end; });
    if (first == ranges.end()) continue;
    auto last = first;
    while (last + 1 != ranges.end() && span.end > last->end) ++last;
    if (last != first) {
      first->end = last->end;
      ranges.erase(first + 1, last + 1);
    }
  }
  return ranges;
}

SentenceContext sentence_context(std::string_view text, std::span<const ByteRange> sentences,
                                 ByteRange span) {
  std::size_t begin = span.begin;
  std::size_t end = span.end;
  for (const ByteRange& r : sentences) {
    if (r.end > span.begin && r.begin < span.end) {
      begin = std::min(begin, r.begin);
      end = std::max(end, r.end);
    }
  }
  while (begin < span.begin && utf8::is_space(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > span.end && utf8::is_space(static_cast<unsigned char>(text[end - 1]))) --end;
  SentenceContext ctx;
  ctx.sentence = std::string(text.substr(begin, end - begin));
  ctx.span_in_sentence = {span.begin - begin, span.end - begin};
  return ctx;
}

LemmaSet lemmatize(std::string_view span, const MatchConfig& cfg) {
  LemmaSet out;
  std::string acronym;
  std::size_t title_words = 0;
  for (const Token& t : tokenize(span)) {
    if (is_title_case(t.text)) {
      ++title_words;
      std::size_t p = 0;
      utf8::append(acronym, utf8::to_lower(utf8::decode(t.text, p)));
    }
    if (!is_alphabetic(t.text)) continue;
    const std::string lower = utf8::to_lower(t.text);
    if (lexicon().is_stopword(lower)) continue;
    std::string lemma = lexicon().lemma(lower);
    auto rank = lexicon().frequency_rank(lemma);
    if (rank && *rank <= cfg.high_freq_rank_cutoff) continue;
    out.lemmas.insert(std::move(lemma));
  }
  if (title_words >= 2) out.coined_acronyms.insert(acronym);
  return out;
}

std::set<std::string> date_lemmas(std::string_view span) {
  std::set<std::string> out;
  for (const Token& t : tokenize(span)) {
    const std::string lower = utf8::to_lower(t.text);
    if (!is_month(lower) && lexicon().is_stopword(lower)) continue;
    if (is_alphabetic(lower) && !is_month(lower)) {
      out.insert(lexicon().lemma(lower));
    } else {
      out.insert(lower);
    }
  }
  return out;
}

std::set<std::string> char_ngrams(std::string_view span, int n) {
  std::set<std::string> out;
  for (const Token& t : tokenize(span)) add_ngrams(out, utf8::to_lower(t.text), n);
  return out;
}

bool is_named_entity(EntityLabel label) {
  switch (label) {
    case EntityLabel::kPerson:
    case EntityLabel::kOrg:
    case EntityLabel::kLoc:
    case EntityLabel::kCode:
    case EntityLabel::kMisc:
      return true;
    default:
      return false;
  }
}

bool match(std::string_view original, EntityLabel label, std::string_view guess,
           const MatchConfig& cfg) {
  if (label == EntityLabel::kDatetime) return date_lemmas(original) == date_lemmas(guess);

  const LemmaSet a = lemmatize(original, cfg);
  const LemmaSet b = lemmatize(guess, cfg);
  std::set<std::string> expanded_a = a.lemmas;
  expanded_a.insert(a.coined_acronyms.begin(), a.coined_acronyms.end());
  std::set<std::string> expanded_b = b.lemmas;
  expanded_b.insert(b.coined_acronyms.begin(), b.coined_acronyms.end());
  if (intersects(expanded_a, expanded_b)) return true;

  if (!is_named_entity(label)) return false;
  std::set<std::string> grams_a;
  for (const auto& t : ngram_tokens(original, cfg)) add_ngrams(grams_a, t, cfg.ngram_n);
  std::set<std::string> grams_b;
  for (const auto& t : ngram_tokens(guess, cfg)) add_ngrams(grams_b, t, cfg.ngram_n);
  return intersects(grams_a, grams_b);
}

bool match(const PiiSpan& original, std::string_view guess, const MatchConfig& cfg) {
  return match(original.surface, original.label, guess, cfg);
}

bool risky_replace(std::string_view original, EntityLabel label,
                   std::span<const std::string> guesses, const MatchConfig& cfg) {
  return std::any_of(guesses.begin(), guesses.end(),
                     [&](const std::string& g) { return match(original, label, g, cfg); });
}

bool risky_replace(const PiiSpan& original, std::span<const std::string> guesses,
                   const MatchConfig& cfg) {
  return risky_replace(original.surface, original.label, guesses, cfg);
}

}  // namespace intact
