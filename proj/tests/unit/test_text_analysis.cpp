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

#include <doctest.h>

#include <fstream>

#include "intact/lexicon.hpp"
#include "intact/random.hpp"
#include "intact/text_analysis.hpp"
#include "intact/utf8.hpp"
#include "support.hpp"

using namespace intact;

namespace {

std::vector<std::string> sentences_of(std::string_view text,
                                      std::span<const ByteRange> protect = {}) {
  std::vector<std::string> out;
  for (const auto& r : split_sentences(text, protect)) {
    std::string s(text.substr(r.begin, r.end - r.begin));
    while (!s.empty() && (s.back() == ' ' || s.back() == '\n')) s.pop_back();
    out.push_back(s);
  }
  return out;
}

std::set<std::string> set_of(std::initializer_list<const char*> xs) {
  return {xs.begin(), xs.end()};
}

}  // namespace

TEST_SUITE("text_analysis") {

TEST_CASE("tokens are runs of letters and digits") {
  const auto t = tokenize("Alzheimer's disease, 1,200 Zürich-based");
  std::vector<std::string> words;
  for (const auto& x : t) words.push_back(x.text);
  CHECK(words == std::vector<std::string>{"Alzheimer", "s", "disease", "1", "200", "Zürich", "based"});
  CHECK(is_title_case("Zürich"));
  CHECK_FALSE(is_title_case("ECHR"));
  CHECK_FALSE(is_title_case("of"));
}

TEST_CASE("terminal punctuation splits sentences") {
  CHECK(sentences_of("A. B? C.") == std::vector<std::string>{"A.", "B?", "C."});
  CHECK(sentences_of("Mr. Smith left.") == std::vector<std::string>{"Mr. Smith left."});
}

TEST_CASE("sentence ranges partition the text") {
  const std::string text = "  First one. Second one!\n\nThird   one? fourth";
  const auto ranges = split_sentences(text);
  REQUIRE_FALSE(ranges.empty());
  CHECK(ranges.front().begin == 0);
  CHECK(ranges.back().end == text.size());
  for (std::size_t i = 1; i < ranges.size(); ++i) CHECK(ranges[i].begin == ranges[i - 1].end);
}

TEST_CASE("curated twenty-sentence fixture") {
  const std::vector<std::string> expected = {
      "Mr. Smith left the building.",
      "Dr. Jones arrived at 5 p.m. on Monday.",
      "The applicant, i.e. the mother, complained.",
      "She lodged her application on 3 May 2001.",
      "Was the hearing public?",
      "It was not!",
      "The case (no. 123/45) was adjourned.",
      "See Art. 6 of the Convention.",
      "\"Nothing happened,\" he said.",
      "The U.S. government responded.",
      "2004 was a difficult year.",
      "Prof. Brown testified.",
      "The company, Acme Inc., was fined.",
      "St. Petersburg is far.",
      "The court met on Jan. 5.",
      "He paid approx. 500 euros.",
      "Ms. Lee disagreed.",
      "The judgment became final.",
      "The decision was appealed, cf. paragraph 12.",
      "Nothing further was said.",
  };
  std::string text;
  for (const auto& s : expected) text += s + " ";
  CHECK(sentences_of(text) == expected);
}

TEST_CASE("a span straddling a boundary merges the two sentences") {
  const std::string text = "It was 1999. He left. Then A. B. Corp sued.";
  const auto at = text.find("1999. He");
  const ByteRange span{at, at + 8};
  const auto sents = sentences_of(text, std::span<const ByteRange>(&span, 1));
  CHECK(sents.front() == "It was 1999. He left.");
  const auto ctx = sentence_context(text, split_sentences(text, std::span<const ByteRange>(&span, 1)), span);
  CHECK(ctx.sentence == "It was 1999. He left.");
  CHECK(ctx.sentence.substr(ctx.span_in_sentence.begin,
                            ctx.span_in_sentence.end - ctx.span_in_sentence.begin) == "1999. He");
}

TEST_CASE("lemmatizer") {
  const Lexicon& lex = Lexicon::english();
  CHECK(lex.lemma("dogs") == "dog");
  CHECK(lex.lemma("rights") == "right");
  CHECK(lex.lemma("courts") == "court");
  CHECK(lex.lemma("children") == "child");
  CHECK(lex.lemma("countries") == "country");
  CHECK(lex.lemma("churches") == "church");
  CHECK(lex.lemma("glass") == "glass");
  CHECK(lex.lemma("hiding") == "hide");
  CHECK(lex.lemma("stopped") == "stop");
  CHECK(lex.lemma("larger") == "large");
  CHECK(lex.lemma("tiger") == "tiger");
  CHECK(lex.lemma("paris") == "paris");
  CHECK(lex.stopword_count() == 179);
}

TEST_CASE("lemma sets and acronym coinage") {
  CHECK(lemmatize("dogs").lemmas == set_of({"dog"}));
  const auto echr = lemmatize("European Court of Human Rights");
  for (const char* l : {"european", "court", "human", "right"}) CHECK(echr.lemmas.count(l) == 1);
  CHECK(echr.coined_acronyms.count("echr") == 1);
  CHECK(lemmatize("the 2003").empty());
  CHECK(lemmatize("Oslo").coined_acronyms.empty());
}

TEST_CASE("character n-grams") {
  CHECK(char_ngrams("abcd", 4) == set_of({"abcd"}));
  CHECK(char_ngrams("turkey", 4) == set_of({"turk", "urke", "rkey"}));
  CHECK(char_ngrams("ab", 4) == set_of({"ab"}));
  CHECK(char_ngrams("Turkey", 4) == char_ngrams("turkey", 4));
}

TEST_CASE("date lemmas keep numbers and month names") {
  CHECK(date_lemmas("3 August 2003") == set_of({"3", "august", "2003"}));
  CHECK(date_lemmas("in May 2001") == set_of({"may", "2001"}));
}

TEST_CASE("the four reference matching cases") {
  CHECK(match("Turkey", EntityLabel::kLoc, "Turkish"));
  CHECK_FALSE(match("3 August 2003", EntityLabel::kDatetime, "August 2003"));
  CHECK(match("3 August 2003", EntityLabel::kDatetime, "3 August 2003"));
  CHECK(match("European Court of Human Rights", EntityLabel::kOrg, "ECHR"));
  CHECK(match("dogs", EntityLabel::kMisc, "dog"));
  CHECK_FALSE(match("Catholic", EntityLabel::kDem, "Protestant"));
}

TEST_CASE("hand-labelled matching pairs") {
  std::ifstream in(std::string(INTACT_FIXTURE_DIR) + "/match_pairs.tsv");
  REQUIRE(in);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    for (;;) {
      const auto tab = line.find('\t', pos);
      f.push_back(line.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    REQUIRE(f.size() == 4);
    CAPTURE(line);
    CHECK(match(f[2], *parse_label(f[1]), f[3]) == (f[0] == "1"));
    ++n;
  }
  CHECK(n == 40);
}

TEST_CASE("risky_replace is an existential over guesses") {
  const auto doc = intact::testing::annotate("t", "He moved to Turkey.", {{"Turkey", "LOC"}});
  const auto& span = doc.spans()[0];
  CHECK_FALSE(risky_replace(span, std::vector<std::string>{"France", "Spain"}));
  CHECK(risky_replace(span, std::vector<std::string>{"France", "Turkish"}));
  CHECK_FALSE(risky_replace(span, std::vector<std::string>{}));
}

TEST_CASE("matching properties over a word pool") {
  const std::vector<std::string> pool = {
      "Turkey",  "Turkish people", "European Court of Human Rights", "court", "dogs",
      "a dog",   "Catholic",       "Christian",      "Oslo",  "the city of Oslo",
      "ECHR",    "Acme Corporation", "AC",           "2003",  "3 August 2003",
      "Muslims", "rights",         "Human Rights Watch", "Ankara", "a large city"};
  SplitMix64 rng(3);
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      // The lemma branch is symmetric; QUANTITY and DEM only use that branch.
      CHECK(match(a, EntityLabel::kDem, b) == match(b, EntityLabel::kDem, a));
      CHECK(match(a, EntityLabel::kLoc, b) == match(b, EntityLabel::kLoc, a));
    }
    if (!lemmatize(a).empty()) CHECK(match(a, EntityLabel::kDem, a));
    CHECK(match(a, EntityLabel::kDatetime, a));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto& original = pool[rng.below(pool.size())];
    std::vector<std::string> guesses;
    bool risky = false;
    for (int g = 0; g < 6; ++g) {
      guesses.push_back(pool[rng.below(pool.size())]);
      const bool now = risky_replace(original, EntityLabel::kOrg, guesses);
      CHECK((!risky || now));
      risky = now;
    }
  }
}

TEST_CASE("matching ignores case when title-case structure is kept") {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"Turkey", "turkish"}, {"dogs", "DOG"}, {"Catholic", "CATHOLICS"}, {"Oslo", "oslo fjord"},
      {"Acme Corporation", "acme"}, {"3 August 2003", "3 AUGUST 2003"}};
  for (const auto& [a, b] : pairs) {
    for (EntityLabel l : kAllLabels) {
      CHECK(match(a, l, b) == match(a, l, utf8::to_lower(b)));
      CHECK(match(utf8::to_lower(b), l, a) == match(b, l, a));
    }
  }
}

}  // TEST_SUITE
