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

#ifndef INTACT_LEXICON_HPP_
#define INTACT_LEXICON_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace intact {

/// Word lists backing the lemmatizer and the lemma filters. The embedded
/// English lists are loaded once and shared.
class Lexicon {
 public:
  static const Lexicon& english();

  /// Builds a lexicon from plain-text lists (one entry per line, '#' starts
  /// a comment). Exceptions are "<form> <lemma>" pairs.
  static Lexicon from_text(std::string_view stopwords, std::string_view high_frequency,
                           std::string_view exceptions);

  bool is_stopword(std::string_view lowercase_word) const;

  /// 1-based frequency rank of a lemma, if listed.
  std::optional<std::size_t> frequency_rank(std::string_view lemma) const;

  /// Base form of a lowercase word: irregular table first, then suffix rules.
  std::string lemma(std::string_view lowercase_word) const;

  std::size_t stopword_count() const { return stopwords_.size(); }
  std::size_t exception_count() const { return exceptions_.size(); }

 private:
  std::unordered_set<std::string> stopwords_;
  std::unordered_map<std::string, std::size_t> ranks_;
  std::unordered_map<std::string, std::string> exceptions_;
};

}  // namespace intact

#endif  // INTACT_LEXICON_HPP_
