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

#ifndef INTACT_TEXT_ANALYSIS_HPP_
#define INTACT_TEXT_ANALYSIS_HPP_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "intact/document.hpp"

namespace intact {

/// Half-open byte range into a UTF-8 buffer.
struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const ByteRange&, const ByteRange&) = default;
};

struct Token {
  std::size_t begin = 0;  // byte offsets
  std::size_t end = 0;
  std::string text;
};

/// Word tokens: maximal runs of letters and digits. Everything else
/// (whitespace, punctuation, apostrophes, hyphens) separates tokens.
std::vector<Token> tokenize(std::string_view text);

bool is_alphabetic(std::string_view token);

/// Title case: an upper-case letter followed only by lower-case letters.
bool is_title_case(std::string_view token);

/// Splits `text` into sentence ranges that partition it. A range ends after
/// terminal punctuation (plus closing quotes/brackets and trailing
/// whitespace) when the next sentence starts with an upper-case letter, a
/// digit or an opening quote. Known abbreviations never end a sentence.
/// Ranges that a protected span would straddle are merged.
std::vector<ByteRange> split_sentences(std::string_view text,
                                       std::span<const ByteRange> protected_spans = {});

struct SentenceContext {
  std::string sentence;
  ByteRange span_in_sentence;  // byte range of the target inside `sentence`
};

/// The whitespace-trimmed sentence holding `span`.
SentenceContext sentence_context(std::string_view text, std::span<const ByteRange> sentences,
                                 ByteRange span);

struct MatchConfig {
  int ngram_n = 4;
  std::size_t high_freq_rank_cutoff = 1000;
  std::string stopword_list_id = "stopwords_en";
};

struct LemmaSet {
  std::set<std::string> lemmas;
  std::set<std::string> coined_acronyms;

  bool empty() const { return lemmas.empty() && coined_acronyms.empty(); }
};

/// Content lemmas of a span, lowercase. Non-alphabetic tokens, stopwords
/// and lemmas ranked within the high-frequency cutoff are dropped. When the
/// span has two or more title-cased words their initials form a coined
/// acronym.
LemmaSet lemmatize(std::string_view span, const MatchConfig& cfg = {});

/// Lemmas of every token that is not punctuation or a stopword, including
/// numbers; month names survive even when they are stopwords. Used for the
/// all-lemmas-equal rule on dates.
std::set<std::string> date_lemmas(std::string_view span);

/// Character n-grams of each lowercase token; tokens shorter than n
/// contribute themselves.
std::set<std::string> char_ngrams(std::string_view span, int n);

bool is_named_entity(EntityLabel label);

bool match(std::string_view original, EntityLabel label, std::string_view guess,
           const MatchConfig& cfg = {});
bool match(const PiiSpan& original, std::string_view guess, const MatchConfig& cfg = {});

/// True iff at least one guess matches the original span.
bool risky_replace(const PiiSpan& original, std::span<const std::string> guesses,
                   const MatchConfig& cfg = {});
bool risky_replace(std::string_view original, EntityLabel label,
                   std::span<const std::string> guesses, const MatchConfig& cfg = {});

}  // namespace intact

#endif  // INTACT_TEXT_ANALYSIS_HPP_
