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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. The live-server smoke check runs only when INTACT_LIVE_CHAT_URL
// is set.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "date_oracle.hpp"
#include "intact/clustering.hpp"
#include "intact/config.hpp"
#include "intact/date_generalizer.hpp"
#include "intact/errors.hpp"
#include "intact/http_gateway.hpp"
#include "intact/mock_gateway.hpp"
#include "intact/pipeline.hpp"
#include "intact/privacy_risk.hpp"
#include "intact/random.hpp"
#include "intact/utility_metrics.hpp"
#include "support.hpp"

using namespace intact;
using intact::testing::annotate;
using intact::testing::hyphen_lines;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

#define EXPECT(cond, ...)                                   \
  do {                                                      \
    if (!(cond)) return Outcome{false, fmt::format(__VA_ARGS__)}; \
  } while (0)

std::string bracketed(const std::string& prompt, const std::string& marker) {
  const auto at = prompt.rfind(marker);
  if (at == std::string::npos) return {};
  const auto begin = at + marker.size();
  std::string inner = prompt.substr(begin, prompt.rfind("]]") - begin);
  while (!inner.empty() && inner.front() == ' ') inner.erase(inner.begin());
  while (!inner.empty() && inner.back() == ' ') inner.pop_back();
  return inner;
}

class ScriptedModel : public ChatModel {
 public:
  std::map<std::string, std::vector<std::string>> lists;    // original -> candidates
  std::map<std::string, std::vector<std::string>> guesses;  // candidate -> guesses

  std::string chat(const ChatRequest& request) override {
    const std::string& last = request.messages.back().content;
    if (auto t = bracketed(last, "Guesses for [["); !t.empty()) {
      auto it = guesses.find(t);
      return hyphen_lines(it == guesses.end() ? std::vector<std::string>{"nothing"} : it->second);
    }
    auto it = lists.find(bracketed(last, "Sorted replacements for [["));
    return it == lists.end() ? std::string("no") : hyphen_lines(it->second);
  }
};

// Pronounceable pseudo-words, unique per index.
std::string pseudo_word(std::size_t i) {
  static const char* syl[] = {"ka", "lo", "mi", "ve", "ru", "sa", "to", "ne", "bi", "do"};
  std::string w;
  std::size_t n = i;
  do {
    w += syl[n % 10];
    n /= 10;
  } while (n > 0);
  w += "ra";
  w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
  return w;
}

Outcome selection_semantics() {
  const auto start = std::chrono::steady_clock::now();
  struct Fixture {
    std::string text, surface, label;
  };
  const std::vector<std::pair<std::string, std::string>> kinds = {
      {"LOC", "The applicant moved to {} last spring."},
      {"ORG", "She was employed by {} for a decade."},
      {"DEM", "The witness described himself as {} by origin."},
      {"MISC", "He received {} for his service."},
      {"QUANTITY", "The family owned {} at the time."}};
  std::vector<Fixture> fixtures;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& [label, tmpl] = kinds[i % kinds.size()];
    std::string surface = pseudo_word(i);
    if (label == "ORG") surface += " Holdings";
    if (label == "QUANTITY") surface = std::to_string(3 + i) + " horses";
    fixtures.push_back({fmt::format(fmt::runtime(tmpl), surface), surface, label});
  }
  std::size_t checked = 0;
  for (std::size_t j = 1; j <= 6; ++j) {  // j = 6: every candidate is risky
    for (std::size_t f = 0; f < fixtures.size(); ++f) {
      const auto& fx = fixtures[f];
      ScriptedModel model;
      std::vector<std::string> list;
      for (std::size_t k = 1; k <= 5; ++k) {
        const std::string c = fmt::format("generic option {} {}", f, k);
        list.push_back(c);
        model.guesses[c] = k < j ? std::vector<std::string>{fx.surface, "zzz"}
                                 : std::vector<std::string>{"qqq"};
      }
      model.lists[fx.surface] = list;
      PipelineConfig cfg;
      cfg.rng_seed = 13;
      Sanitizer sanitizer(cfg, model);
      const auto doc = annotate("f" + std::to_string(f), fx.text, {{fx.surface, fx.label}});
      const auto out = sanitizer.sanitize(doc);
      const auto& r = out.records.at(0);
      if (j <= 5) {
        EXPECT(r.selected_rank == std::optional<std::size_t>(j) && r.selected == list[j - 1],
               "fixture {} script {}: selected '{}'", f, j, r.selected);
      } else {
        EXPECT(r.is_fallback() && r.selected == fx.label + "_1", "fixture {}: expected fallback, got '{}'", f,
               r.selected);
      }
      EXPECT(record_is_consistent(r), "fixture {} script {}: inconsistent record", f, j);
      ++checked;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT(secs < 5.0, "took {:.2f} s", secs);
  return {true, fmt::format("{} runs, 0 failures, {:.2f} s", checked, secs)};
}

Outcome matching_suite() {
  EXPECT(match("Turkey", EntityLabel::kLoc, "Turkish"), "Turkey/Turkish should match");
  EXPECT(!match("3 August 2003", EntityLabel::kDatetime, "August 2003"), "partial date should not match");
  EXPECT(match("European Court of Human Rights", EntityLabel::kOrg, "ECHR"), "acronym should match");
  EXPECT(match("dogs", EntityLabel::kMisc, "dog"), "dogs/dog should match");
  std::ifstream in(std::string(INTACT_FIXTURE_DIR) + "/match_pairs.tsv");
  EXPECT(in.good(), "match_pairs.tsv missing");
  std::string line;
  std::size_t pairs = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, '\t');) f.push_back(cell);
    EXPECT(f.size() == 4, "bad line '{}'", line);
    const auto label = parse_label(f[1]);
    EXPECT(label.has_value(), "bad label '{}'", f[1]);
    EXPECT(match(f[2], *label, f[3]) == (f[0] == "1"), "disagreement on '{}' vs '{}'", f[2], f[3]);
    ++pairs;
  }
  EXPECT(pairs == 40, "expected 40 pairs, read {}", pairs);
  return {true, "4 reference cases, 40/40 labelled pairs"};
}

Outcome metric_identities() {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  MockEmbedder embedder;
  const std::vector<std::string> words = {"river", "Oslo", "engineer", "hospital", "court", "Bergen", "quiet"};
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    MockMaskScorer scorer(u(rng));
    for (const auto& w : words) scorer.set_token(w, u(rng));
    std::string text;
    std::vector<intact::testing::Mark> marks, all;
    for (int i = 0; i < 9; ++i) {
      const std::string& w = words[rng() % words.size()];
      text += (text.empty() ? "" : " ") + w;
      all.push_back({w, "MISC", "e" + std::to_string(i)});
      if (i % 2 == 0) marks.push_back({w, "LOC", "e" + std::to_string(i)});
    }
    const auto doc = annotate("d", text, marks);
    const auto full = annotate("f", text, all);
    const auto scored = score_document(doc, scorer, {});
    const auto scored2 = score_document(doc, scorer, {}, 2.0);
    double sum = 0.0;
    for (const auto& s : scored) sum += s.ric;
    EXPECT(std::abs(sum - 1.0) <= 1e-9, "sum of RIC = {}", sum);

    std::vector<ReplacementRecord> same, other;
    for (std::size_t i = 0; i < doc.spans().size(); ++i) {
      ReplacementRecord r;
      r.span_index = i;
      r.fallback_label = r.selected = doc.spans()[i].surface;
      same.push_back(r);
      r.fallback_label = r.selected = "a place";
      other.push_back(r);
    }
    const double identity = document_tps(doc, apply_replacements(doc, same), scored, embedder, "e").tps;
    EXPECT(std::abs(identity - 1.0) <= 1e-9, "TPS(D,D) = {}", identity);
    const auto edited = apply_replacements(doc, other);
    const double te = document_tps(doc, edited, scored, embedder, "e").tps;
    const double t2 = document_tps(doc, edited, scored2, embedder, "e").tps;
    EXPECT(std::abs(te - t2) <= 1e-9, "log base changes TPS: {} vs {}", te, t2);
    worst = std::max(worst, std::abs(te - t2));
    const auto full_scored = score_document(full, scorer, {});
    const double none =
        document_tps(full, sanitize_baseline(full, Strategy::kSuppression), full_scored, embedder, "e").tps;
    EXPECT(std::abs(none) <= 1e-9, "all-suppressed TPS = {}", none);
  }
  EXPECT(clamp_similarity(-0.3) == 0.0, "clamp(-0.3) != 0");
  return {true, fmt::format("50 documents, max log-base drift {:.1e}", worst)};
}

Outcome strategy_ordering() {
  // Scripted geometry: original i is e_i; its rank-k candidate has cosine
  // 0.9 - 0.15(k-1) to it; every label string has cosine 0.1 to every
  // original.
  constexpr std::size_t kDocs = 50;
  constexpr std::size_t kSurfaces = 2 * kDocs;
  constexpr std::size_t kDim = 2 * kSurfaces;
  MockEmbedder embedder(kDim, 5);
  ScriptedModel model;
  std::vector<AnnotatedDocument> docs;
  std::mt19937 rng(23);
  Vector label_vec(kDim, 0.0);
  for (std::size_t i = 0; i < kSurfaces; ++i) label_vec[i] = 0.1;
  for (const char* l : {"LOC", "ORG", "LOC_1", "ORG_1"}) embedder.script(l, label_vec);

  for (std::size_t d = 0; d < kDocs; ++d) {
    const std::string loc = pseudo_word(2 * d);
    const std::string org = pseudo_word(2 * d + 1) + " Holdings";
    docs.push_back(annotate(fmt::format("doc{:02}", d),
                            fmt::format("The applicant travelled from {} to attend a hearing arranged by {} "
                                        "and later returned home.",
                                        loc, org),
                            {{loc, "LOC"}, {org, "ORG"}}));
    for (std::size_t s = 0; s < 2; ++s) {
      const std::size_t idx = 2 * d + s;
      const std::string surface = s == 0 ? loc : org;
      Vector e(kDim, 0.0);
      e[idx] = 1.0;
      embedder.script(surface, e);
      std::vector<std::string> list;
      for (std::size_t k = 0; k < 5; ++k) {
        const std::string c = fmt::format("generalization {} of {}", k + 1, surface);
        const double cs = 0.9 - 0.15 * static_cast<double>(k);
        Vector v(kDim, 0.0);
        v[idx] = cs;
        v[kSurfaces + idx] = std::sqrt(1.0 - cs * cs);
        embedder.script(c, v);
        list.push_back(c);
        // The attacker sees through the most specific candidate half the time.
        if (k == 0 && rng() % 2 == 0) model.guesses[c] = {surface};
        if (k == 1 && rng() % 4 == 0) model.guesses[c] = {surface};
      }
      model.lists[surface] = list;
    }
  }

  MockMaskScorer scorer(0.4);
  std::map<Strategy, double> mean;
  for (Strategy s : {Strategy::kSuppression, Strategy::kEntityType, Strategy::kIntact, Strategy::kMostSpecific}) {
    PipelineConfig cfg;
    cfg.strategy = s;
    cfg.rng_seed = 13;
    Sanitizer sanitizer(cfg, model);
    const auto out = sanitize_corpus(sanitizer, docs, 2);
    std::vector<SanitizedEntry> entries;
    for (std::size_t i = 0; i < docs.size(); ++i) entries.push_back({docs[i], out[i]});
    mean[s] = evaluate_tps(entries, scorer, embedder, {}, "sim").mean_tps;
  }
  const double sup = mean[Strategy::kSuppression], ent = mean[Strategy::kEntityType],
               in = mean[Strategy::kIntact], most = mean[Strategy::kMostSpecific];
  const std::string summary =
      fmt::format("suppression {:.4f} < entity_type {:.4f} <= intact {:.4f} <= most_specific {:.4f}", sup, ent,
                  in, most);
  EXPECT(sup < ent && ent <= in && in <= most && in < most, "{}", summary);
  return {true, summary};
}

double brute_force_inertia(const std::vector<Vector>& pts, std::size_t k) {
  double best = std::numeric_limits<double>::infinity();
  Partition labels(pts.size(), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == pts.size()) {
      if (used == k) best = std::min(best, inertia(pts, labels));
      return;
    }
    for (std::size_t c = 0; c <= used && c < k; ++c) {
      labels[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
  return best;
}

Outcome kmeans_and_nmi() {
  std::mt19937 rng(31);
  std::normal_distribution<double> g(0.0, 1.0);
  std::size_t instances = 0;
  for (std::size_t n = 3; n <= 8; ++n) {
    for (std::size_t k = 1; k <= 3 && instances < 30; ++k) {
      for (int rep = 0; rep < 2 && instances < 30; ++rep) {
        std::vector<Vector> pts(n, Vector(2));
        for (auto& p : pts) {
          for (auto& x : p) x = g(rng);
        }
        ClusteringConfig cfg;
        cfg.k = k;
        const auto r = kmeanspp_cluster(pts, cfg, instances);
        const double opt = brute_force_inertia(pts, k);
        EXPECT(std::abs(r.inertia - opt) <= 1e-9 * std::max(1.0, opt), "n={} k={}: {} vs optimum {}", n, k,
               r.inertia, opt);
        EXPECT(r.restart_inertias.size() == cfg.restarts, "restart count");
        for (double x : r.restart_inertias) EXPECT(r.inertia <= x, "best exceeds a restart");
        ++instances;
      }
    }
  }
  EXPECT(instances == 30, "only {} instances", instances);
  EXPECT(std::abs(nmi({0, 0, 1, 1, 2}, {0, 0, 1, 1, 2}) - 1.0) <= 1e-12, "NMI(identical) != 1");
  const double cross = nmi({0, 0, 1, 1}, {0, 1, 0, 1});
  EXPECT(std::abs(cross) <= 1e-12, "crossing NMI = {}", cross);
  return {true, "30/30 instances optimal, NMI endpoints exact"};
}

Outcome mask_schedule() {
  const auto doc = annotate("m", "The European Court of Human Rights heard Anna Berg from Oslo about the old harbour permits.",
                            {{"European Court of Human Rights", "ORG"}, {"Anna Berg", "PERSON"}, {"Oslo", "LOC"}});
  const auto spans = segment_scoring_spans(doc);
  for (std::size_t n : {2u, 6u}) {
    MockMaskScorer scorer;
    MaskScoringConfig cfg;
    cfg.spacing = n;
    span_probabilities(doc.text(), spans, scorer, cfg);
    const auto log = scorer.requests();
    EXPECT(log.size() == n, "N={}: {} passes", n, log.size());
    // Count masks per span by matching each request back to its pass.
    std::vector<std::size_t> times(spans.size(), 0);
    for (const auto& req : log) {
      for (std::size_t r = 0; r < n; ++r) {
        std::vector<std::size_t> masked;
        for (std::size_t i = r; i < spans.size(); i += n) masked.push_back(i);
        const auto pass = build_masked_pass(doc.text(), spans, masked, cfg);
        if (pass.request.text == req.text) {
          for (std::size_t i : masked) ++times[i];
        }
      }
    }
    for (std::size_t i = 0; i < spans.size(); ++i) {
      EXPECT(times[i] == 1, "N={}: span '{}' masked {} times", n, spans[i].surface, times[i]);
    }
  }
  const auto nyc = annotate("n", "They settled in New York City quickly.", {{"New York City", "LOC"}});
  MockMaskScorer scorer;
  scorer.set_token("New", 0.9);
  scorer.set_token("York", 0.2);
  scorer.set_token("City", 0.6);
  const auto nyc_spans = segment_scoring_spans(nyc);
  const auto prob = span_probabilities(nyc.text(), nyc_spans, scorer, {});
  bool found = false;
  for (std::size_t i = 0; i < nyc_spans.size(); ++i) {
    if (nyc_spans[i].surface == "New York City") {
      EXPECT(std::abs(prob[i] - 0.2) < 1e-15, "min rule gave {}", prob[i]);
      found = true;
    }
  }
  EXPECT(found, "multi-token span missing");
  return {true, fmt::format("{} spans, N=2 and N=6 each mask once; (0.9,0.2,0.6) -> 0.2", spans.size())};
}

// Two-sided acceptance region of Binomial(n, p) at the 95% level.
std::pair<std::size_t, std::size_t> binomial_region(std::size_t n, double p) {
  std::vector<double> pmf(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    pmf[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                      k * std::log(p) + (n - k) * std::log1p(-p));
  }
  std::size_t lo = 0, hi = n;
  double tail = 0.0;
  while (tail + pmf[lo] <= 0.025) tail += pmf[lo++];
  tail = 0.0;
  while (tail + pmf[hi] <= 0.025) tail += pmf[hi--];
  return {lo, hi};
}

Outcome trir_endpoints() {
  constexpr std::size_t P = 20;
  TrainConfig tcfg;
  tcfg.seed = 13;
  tcfg.embed_model_id = "doc";

  // Separable: orthogonal marker words.
  MockEmbedder onehot(P);
  std::vector<BackgroundEntry> bg;
  std::vector<SanitizedText> docs;
  std::map<std::string, std::string> truth;
  for (std::size_t i = 0; i < P; ++i) {
    Vector v(P, 0.0);
    v[i] = 1.0;
    const std::string marker = pseudo_word(i);
    onehot.script(marker, v);
    bg.push_back({fmt::format("person{:02}", i), marker + " " + marker});
    docs.push_back({fmt::format("s{:02}", i), marker});
    truth[docs.back().doc_id] = bg.back().individual_id;
  }
  const auto sep = trir(docs, train_attacker(BackgroundCorpus::create(bg), onehot, tcfg), onehot, truth, "doc");
  EXPECT(sep.trir == 1.0, "separable TRIR = {}", sep.trir);

  // Suppressed: 200 documents, 10 per individual, PII removed.
  MockEmbedder embedder(32, 3);
  std::vector<BackgroundEntry> people;
  std::vector<AnnotatedDocument> originals;
  std::map<std::string, std::string> truth2;
  for (std::size_t i = 0; i < P; ++i) {
    const std::string id = fmt::format("person{:02}", i);
    const std::string name = pseudo_word(100 + i);
    const std::string town = pseudo_word(200 + i);
    people.push_back({id, name + " lived in " + town});
    for (std::size_t k = 0; k < 10; ++k) {
      originals.push_back(annotate(fmt::format("{}-{}", id, k), "The applicant " + name + " lived in " + town + ".",
                                   {{name, "PERSON"}, {town, "LOC"}}));
      truth2[originals.back().doc_id()] = id;
    }
  }
  const auto attacker = train_attacker(BackgroundCorpus::create(people), embedder, tcfg);
  std::vector<SanitizedText> suppressed;
  for (const auto& d : originals) suppressed.push_back({d.doc_id(), sanitize_baseline(d, Strategy::kSuppression).text});
  const auto r1 = trir(suppressed, attacker, embedder, truth2, "doc");
  const auto [lo, hi] = binomial_region(suppressed.size(), 1.0 / P);
  const auto hits = static_cast<std::size_t>(std::lround(r1.trir * suppressed.size()));
  EXPECT(hits >= lo && hits <= hi, "{} hits outside [{}, {}]", hits, lo, hi);

  const auto again = trir(suppressed, train_attacker(BackgroundCorpus::create(people), embedder, tcfg), embedder,
                          truth2, "doc");
  for (std::size_t i = 0; i < again.verdicts.size(); ++i) {
    EXPECT(again.verdicts[i].predicted == r1.verdicts[i].predicted, "rerun differs at {}", i);
  }
  return {true, fmt::format("separable 1.0; suppressed {}/200 in [{}, {}]; reruns identical", hits, lo, hi)};
}

Outcome date_ladder_check() {
  static const char* months[] = {"January", "February", "March",     "April",   "May",      "June",
                                 "July",    "August",   "September", "October", "November", "December"};
  SplitMix64 rng(41);
  for (int i = 0; i < 1000; ++i) {
    const int year = 1000 + static_cast<int>(rng.below(1990));
    const int month = 1 + static_cast<int>(rng.below(12));
    const int day = 1 + static_cast<int>(rng.below(28));
    std::string text;
    long lo = year * 12L + month - 1, hi = lo;
    switch (rng.below(3)) {
      case 0: text = fmt::format("{} {} {}", day, months[month - 1], year); break;
      case 1: text = fmt::format("{} {}", months[month - 1], year); break;
      default:
        text = std::to_string(year);
        lo = year * 12L;
        hi = lo + 11;
    }
    const auto list = generalize_date(text, 5);
    EXPECT(list.has_value() && list->candidates.size() == 5, "'{}' produced no ladder", text);
    std::vector<intact::testing::Interval> previous = {{lo, hi}};
    for (const auto& rung : list->candidates) {
      const auto decoded = intact::testing::decode_date_phrase(rung);
      EXPECT(decoded.has_value(), "'{}': cannot decode rung '{}'", text, rung);
      EXPECT(intact::testing::covers(*decoded, previous), "'{}': rung '{}' does not cover the previous one",
             text, rung);
      previous = *decoded;
    }
  }
  const auto fixture = generalize_date("March 12, 1999", 5);
  EXPECT(fixture && fixture->candidates[0] == "March 1999" && fixture->candidates[1] == "spring 1999",
         "March 12, 1999 ladder starts differently");
  return {true, "1000 random dates nested; March 12, 1999 -> March 1999, spring 1999"};
}

std::string render_turns(const std::vector<ChatMessage>& messages) {
  std::string out;
  for (const auto& m : messages) out += "=== " + std::string(to_string(m.role)) + "\n" + m.content + "\n";
  return out;
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(INTACT_FIXTURE_DIR) + "/golden/" + name, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<ChatMessage> generation_prompt_for(const AnnotatedDocument& doc, std::size_t i) {
  std::vector<ByteRange> protect;
  for (const auto& s : doc.spans()) protect.push_back({s.byte_begin, s.byte_end});
  const auto sentences = split_sentences(doc.text(), protect);
  const auto& span = doc.spans()[i];
  return build_generation_prompt(span, sentence_context(doc.text(), sentences, {span.byte_begin, span.byte_end}));
}

Outcome prompt_goldens() {
  const auto dem = annotate("g1", "Anna lives nearby. She was raised as a Catholic in a small village.",
                            {{"Anna", "PERSON"}, {"Catholic", "DEM"}});
  EXPECT(render_turns(generation_prompt_for(dem, 1)) == golden("generation_dem.txt"), "DEM generation prompt");
  const auto loc = annotate("g2", "He moved to Oslo in 2004. It rained.", {{"Oslo", "LOC"}});
  EXPECT(render_turns(generation_prompt_for(loc, 0)) == golden("generation_loc.txt"), "LOC generation prompt");
  const auto dt = annotate("g3", "The hearing took place last week.", {{"last week", "DATETIME"}});
  EXPECT(render_turns(generation_prompt_for(dt, 0)) == golden("generation_datetime.txt"),
         "DATETIME generation prompt");
  const auto doc = annotate("a", "Anna was raised as a Catholic in a small village in March 1999.",
                            {{"Anna", "PERSON"}, {"Catholic", "DEM"}, {"March 1999", "DATETIME"}});
  std::vector<SpanDraft> drafts(3);
  drafts[0] = {"PERSON_1", std::string("PERSON_1")};
  drafts[1] = {"Christian", std::nullopt};
  drafts[2] = {"spring 1999", std::nullopt};
  const auto context = render_attack_context(doc, drafts, 1, "Monotheist");
  EXPECT(render_turns(build_attack_prompt(context, "Monotheist")) == golden("attack.txt"), "attack prompt");
  return {true, "3 generation prompts and 1 attack prompt byte-identical"};
}

// Needs a live OpenAI-compatible server; structural checks only.
Outcome live_smoke(const std::string& url) {
  HttpEndpoint ep;
  ep.url = url;
  ep.timeout = std::chrono::milliseconds(300000);
  HttpChatModel model(ep);
  PipelineConfig cfg;
  if (const char* m = std::getenv("INTACT_LIVE_MODEL")) cfg.generation.model_id = cfg.attack.model_id = m;
  Sanitizer sanitizer(cfg, model);
  const std::vector<AnnotatedDocument> docs = {
      annotate("live1", "The applicant, a Catholic priest, lived in Lyon.", {{"Catholic", "DEM"}, {"Lyon", "LOC"}}),
      annotate("live2", "She worked for Siemens as an engineer.", {{"Siemens", "ORG"}}),
      annotate("live3", "He owned three cars in 2003.", {{"three", "QUANTITY"}, {"2003", "DATETIME"}})};
  std::ostringstream out;
  std::size_t llm_lists = 0;
  std::vector<SanitizedEntry> entries;
  for (const auto& d : docs) {
    const auto lists = sanitizer.generate_candidates(d);
    for (const auto& l : lists.lists) {
      if (l.source == CandidateSource::kLlm) {
        EXPECT(l.candidates.size() == 5, "'{}': {} candidates", d.doc_id(), l.candidates.size());
        ++llm_lists;
      }
    }
    entries.push_back({d, sanitizer.select(d, lists)});
  }
  write_sanitized_corpus(out, entries);
  std::istringstream back(out.str());
  EXPECT(read_sanitized_corpus(back).size() == docs.size(), "output does not read back");
  return {true, fmt::format("{} model lists of 5 parsed, output valid", llm_lists)};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "selection semantics", selection_semantics},
      {2, "matching suite", matching_suite},
      {3, "metric identities", metric_identities},
      {4, "strategy ordering", strategy_ordering},
      {5, "k-means++ and NMI oracles", kmeans_and_nmi},
      {6, "mask schedule", mask_schedule},
      {7, "TRIR endpoints", trir_endpoints},
      {8, "date ladder", date_ladder_check},
      {9, "prompt golden files", prompt_goldens},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << fmt::format("[{}] criterion {:>2} {}: {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail);
  }
  if (const char* url = std::getenv("INTACT_LIVE_CHAT_URL"); url && *url) {
    Outcome o;
    try {
      o = live_smoke(url);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    // Environment-dependent; reported but never gating.
    std::cout << fmt::format("[{}] criterion 10 live smoke: {}\n", o.pass ? "PASS" : "FAIL", o.detail);
  } else {
    std::cout << "[SKIP] criterion 10 live smoke: INTACT_LIVE_CHAT_URL not set\n";
  }
  return failures == 0 ? 0 : 1;
}
