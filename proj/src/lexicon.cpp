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

#include "intact/lexicon.hpp"

#include <algorithm>
#include <vector>

#include "intact/errors.hpp"
#include "intact/resources.hpp"

namespace intact {

namespace {

template <typename Fn>
void for_each_entry(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    fn(line);
  }
}

std::string_view require(std::string_view name) {
  auto r = resources::find(name);
  if (!r) throw Error("missing embedded resource '" + std::string(name) + "'");
  return *r;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool has_vowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel(c) || c == 'y'; });
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Short consonant-vowel-consonant stems ("hop", "mak", "unit") take a final e.
bool short_cvc(std::string_view s) {
  if (s.size() < 3 || s.size() > 4) return false;
  const char a = s[s.size() - 3], b = s[s.size() - 2], c = s[s.size() - 1];
  return !is_vowel(a) && is_vowel(b) && !is_vowel(c) && c != 'w' && c != 'x' && c != 'y';
}

std::string restore_stem(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) && stem[n - 1] != 'l' &&
      stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz") || short_cvc(stem)) {
    stem.push_back('e');
  }
  return stem;
}

// Adjective list for -er/-est; kept separate from the exception table.
const std::unordered_set<std::string>& gradable_adjectives() {
  static const auto* set = [] {
    auto* s = new std::unordered_set<std::string>();
    for_each_entry(require("lexicon/gradable_adjectives_en.txt"),
                   [&](std::string_view w) { s->emplace(w); });
    return s;
  }();
  return *set;
}

std::optional<std::string> comparative_base(std::string_view w) {
  const auto& adjectives = gradable_adjectives();
  for (std::string_view suffix : {"est", "er"}) {
    if (!ends_with(w, suffix) || w.size() < suffix.size() + 2) continue;
    std::string stem(w.substr(0, w.size() - suffix.size()));
    std::vector<std::string> options{stem, stem + "e"};
    if (stem.size() >= 2 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
      options.push_back(stem.substr(0, stem.size() - 1));
    }
    if (stem.back() == 'i') options.push_back(stem.substr(0, stem.size() - 1) + "y");
    for (const auto& o : options) {
      if (adjectives.count(o)) return o;
    }
  }
  return std::nullopt;
}

}  // namespace

const Lexicon& Lexicon::english() {
  static const Lexicon lexicon =
      from_text(require("lexicon/stopwords_en.txt"), require("lexicon/high_frequency_en.txt"),
                require("lexicon/lemma_exceptions_en.txt"));
  return lexicon;
}

Lexicon Lexicon::from_text(std::string_view stopwords, std::string_view high_frequency,
                           std::string_view exceptions) {
  Lexicon lex;
  for_each_entry(stopwords, [&](std::string_view w) { lex.stopwords_.emplace(w); });
  std::size_t rank = 0;
  for_each_entry(high_frequency, [&](std::string_view w) { lex.ranks_.emplace(std::string(w), ++rank); });
  for_each_entry(exceptions, [&](std::string_view line) {
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) throw Error("malformed lemma exception '" + std::string(line) + "'");
    lex.exceptions_.emplace(std::string(line.substr(0, sp)), std::string(line.substr(sp + 1)));
  });
  return lex;
}

bool Lexicon::is_stopword(std::string_view w) const { return stopwords_.count(std::string(w)) > 0; }

std::optional<std::size_t> Lexicon::frequency_rank(std::string_view lemma) const {
  auto it = ranks_.find(std::string(lemma));
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

std::string Lexicon::lemma(std::string_view w) const {
  if (auto it = exceptions_.find(std::string(w)); it != exceptions_.end()) return it->second;
  if (w.size() <= 3) return std::string(w);
  if (auto base = comparative_base(w)) return *base;

  if (ends_with(w, "ies") && w.size() > 4) return std::string(w.substr(0, w.size() - 3)) + "y";
  if (ends_with(w, "sses")) return std::string(w.substr(0, w.size() - 2));
  if (ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "zes")) {
    return std::string(w.substr(0, w.size() - 2));
  }
  if (ends_with(w, "s")) {
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return std::string(w);
    return std::string(w.substr(0, w.size() - 1));
  }
  if (ends_with(w, "ing") && w.size() >= 6) {
    std::string_view stem = w.substr(0, w.size() - 3);
    if (has_vowel(stem)) return restore_stem(std::string(stem));
  }
  if (ends_with(w, "ed") && w.size() >= 5 && !ends_with(w, "eed")) {
    if (ends_with(w, "ied")) return std::string(w.substr(0, w.size() - 3)) + "y";
    std::string_view stem = w.substr(0, w.size() - 2);
    if (has_vowel(stem)) return restore_stem(std::string(stem));
  }
  return std::string(w);
}

}  // namespace intact
