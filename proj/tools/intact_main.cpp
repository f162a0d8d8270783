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

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "intact/clustering.hpp"
#include "intact/config.hpp"
#include "intact/document.hpp"
#include "intact/errors.hpp"
#include "intact/pipeline.hpp"
#include "intact/privacy_risk.hpp"
#include "intact/random.hpp"
#include "intact/utility_metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace intact;

namespace {

using Clock = std::chrono::steady_clock;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Manifest {
 public:
  Manifest(std::string command, const Config& config) : command_(std::move(command)), started_(Clock::now()) {
    j_["command"] = command_;
    j_["version"] = INTACT_VERSION;
    j_["config"] = json::parse(config_to_json(config));
    j_["seeds"] = {{"base", config.seed},
                   {"pipeline", config.pipeline.rng_seed},
                   {"clustering", config.clustering.rng_seed},
                   {"attacker", config.train.seed}};
    j_["model_ids"] = {{"generation", config.pipeline.generation.model_id},
                       {"attack", config.pipeline.attack.model_id},
                       {"scorer", config.scoring.scorer_model_id},
                       {"similarity", config.similarity_model_id},
                       {"document", config.document_model_id}};
    j_["backend"] = config.gateway.backend;
    j_["inputs"] = json::object();
    j_["timings_ms"] = json::object();
  }

  void input(const std::string& role, const fs::path& path) {
    j_["inputs"][role] = {{"path", path.string()}, {"fnv1a64", hex(fnv1a(read_file(path)))}};
  }

  void phase(const std::string& name, Clock::time_point since) {
    j_["timings_ms"][name] =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - since).count();
  }

  void output(const fs::path& path) { j_["outputs"].push_back(path.string()); }

  void write(const fs::path& out) {
    phase("total", started_);
    write_file_atomically(fs::path(out.string() + ".manifest.json"), j_.dump(2) + "\n");
  }

 private:
  std::string command_;
  Clock::time_point started_;
  json j_;
};

Config load(const std::string& path) {
  Config c = path.empty() ? parse_config(default_config_json(), "<default>") : load_config(path);
  set_body_redaction(c.redact_bodies);
  return c;
}

std::vector<SanitizedEntry> load_sanitized(const fs::path& path) {
  auto entries = read_sanitized_corpus(path);
  if (entries.empty()) throw ParseError("'" + path.string() + "' holds no documents");
  return entries;
}

std::string strategy_of(const std::vector<SanitizedEntry>& entries) {
  return std::string(to_string(entries.front().sanitized.strategy));
}

void write_result(const fs::path& out, json result, const std::string& table) {
  write_file_atomically(out, result.dump(2) + "\n");
  write_file_atomically(fs::path(out.string() + ".txt"), table);
}

// --- commands ---------------------------------------------------------------

struct Common {
  std::string config;
  std::string out;
  std::size_t workers = 1;
};

int cmd_sanitize(const Common& common, const std::string& corpus, const std::string& strategy_name) {
  Config config = load(common.config);
  if (!strategy_name.empty()) {
    auto s = parse_strategy(strategy_name);
    if (!s) throw ConfigError("unknown strategy '" + strategy_name + "'");
    config.pipeline.strategy = *s;
  }
  Manifest manifest("sanitize", config);
  manifest.input("corpus", corpus);

  auto t = Clock::now();
  const auto docs = ingest_corpus(corpus);
  manifest.phase("read", t);

  Backends backends = make_backends(config.gateway);
  Sanitizer sanitizer(config.pipeline, *backends.chat);
  t = Clock::now();
  auto sanitized = sanitize_corpus(sanitizer, docs, common.workers);
  manifest.phase("sanitize", t);

  std::vector<SanitizedEntry> entries;
  entries.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) entries.push_back({docs[i], std::move(sanitized[i])});
  std::ostringstream out;
  write_sanitized_corpus(out, entries);
  write_file_atomically(common.out, out.str());
  manifest.output(common.out);
  manifest.write(common.out);
  spdlog::info("sanitized {} documents with strategy {}", docs.size(), to_string(config.pipeline.strategy));
  return 0;
}

int cmd_eval_tps(const Common& common, const std::string& sanitized_path) {
  const Config config = load(common.config);
  Manifest manifest("eval-tps", config);
  manifest.input("sanitized", sanitized_path);
  const auto entries = load_sanitized(sanitized_path);
  Backends backends = make_backends(config.gateway);

  auto t = Clock::now();
  const auto report = evaluate_tps(entries, *backends.scorer, *backends.embedder, config.scoring,
                                   config.similarity_model_id, config.log_base);
  manifest.phase("tps", t);

  json docs = json::array();
  std::string table = fmt::format("{:<24}{:>10}{:>8}\n", "doc_id", "TPS", "spans");
  for (const auto& d : report.documents) {
    json spans = json::array();
    for (const auto& s : d.spans) {
      spans.push_back({{"surface", s.surface},
                       {"replacement", s.replacement},
                       {"edited", s.edited},
                       {"ic", s.ic},
                       {"ric", s.ric},
                       {"similarity", s.similarity}});
    }
    docs.push_back({{"doc_id", d.doc_id}, {"tps", d.tps}, {"spans", spans}});
    table += fmt::format("{:<24}{:>10.4f}{:>8}\n", d.doc_id, d.tps, d.spans.size());
  }
  table += fmt::format("{:<24}{:>10.4f}\n", "mean", report.mean_tps);
  write_result(common.out,
               {{"metric", "tps"}, {"strategy", strategy_of(entries)}, {"value", report.mean_tps},
                {"documents", docs}},
               table);
  manifest.output(common.out);
  manifest.write(common.out);
  spdlog::info("mean TPS {:.4f} over {} documents", report.mean_tps, report.documents.size());
  return 0;
}

int cmd_eval_cluster(const Common& common, const std::string& sanitized_path, bool sweep, std::size_t k) {
  Config config = load(common.config);
  if (k > 0) config.clustering.k = k;
  Manifest manifest("eval-cluster", config);
  manifest.input("sanitized", sanitized_path);
  const auto entries = load_sanitized(sanitized_path);
  Backends backends = make_backends(config.gateway);

  std::vector<std::string> originals, sanitized;
  for (const auto& e : entries) {
    originals.push_back(e.original.text());
    sanitized.push_back(e.sanitized.text);
  }
  auto t = Clock::now();
  const auto xo = document_embeddings(originals, *backends.embedder, config.document_model_id);
  const auto xs = document_embeddings(sanitized, *backends.embedder, config.document_model_id);
  manifest.phase("embed", t);
  t = Clock::now();
  const auto u = clustering_utility(xo, xs, config.clustering);
  manifest.phase("cluster", t);

  std::string table = fmt::format("{:<6}{:>10}\n", "run", "NMI");
  for (std::size_t r = 0; r < u.runs.size(); ++r) table += fmt::format("{:<6}{:>10.4f}\n", r + 1, u.runs[r]);
  table += fmt::format("{:<6}{:>10.4f} ± {:.4f}\n", "mean", u.mean, u.stddev);
  json result = {{"metric", "nmi"}, {"strategy", strategy_of(entries)}, {"value", u.mean},
                 {"stddev", u.stddev}, {"runs", u.runs}, {"k", config.clustering.k}};
  if (sweep) {
    json curve = json::array();
    table += "\nk  inertia (original documents)\n";
    for (const auto& [k, in] : inertia_sweep(xo, config.clustering)) {
      curve.push_back({{"k", k}, {"inertia", in}});
      table += fmt::format("{:<3}{:.6g}\n", k, in);
    }
    result["inertia_sweep"] = curve;
  }
  write_result(common.out, result, table);
  manifest.output(common.out);
  manifest.write(common.out);
  spdlog::info("NMI {:.4f} ± {:.4f} over {} runs", u.mean, u.stddev, u.runs.size());
  return 0;
}

int cmd_eval_trir(const Common& common, const std::string& background_path, const std::string& sanitized_path,
                  const std::string& truth_path) {
  const Config config = load(common.config);
  Manifest manifest("eval-trir", config);
  manifest.input("background", background_path);
  manifest.input("sanitized", sanitized_path);
  const auto entries = load_sanitized(sanitized_path);

  std::map<std::string, std::string> truth;
  if (!truth_path.empty()) {
    manifest.input("truth", truth_path);
    truth = read_truth(truth_path);
  } else {
    for (const auto& e : entries) {
      if (!e.original.individual_id()) {
        throw UnknownIndividualError("document '" + e.original.doc_id() +
                                     "' has no individual_id and no --truth file was given");
      }
      truth[e.original.doc_id()] = *e.original.individual_id();
    }
  }
  Backends backends = make_backends(config.gateway);
  const auto background = BackgroundCorpus::read(background_path);

  auto t = Clock::now();
  const auto attacker = train_attacker(background, *backends.embedder, config.train);
  manifest.phase("train", t);
  std::vector<SanitizedText> docs;
  for (const auto& e : entries) docs.push_back({e.sanitized.doc_id, e.sanitized.text});
  t = Clock::now();
  const auto report = trir(docs, attacker, *backends.embedder, truth, config.document_model_id);
  manifest.phase("attack", t);

  json verdicts = json::array();
  std::string table = fmt::format("{:<24}{:<16}{:<16}{}\n", "doc_id", "truth", "predicted", "correct");
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"doc_id", v.doc_id}, {"truth", v.truth}, {"predicted", v.predicted},
                        {"correct", v.correct}, {"tie", v.tie}});
    table += fmt::format("{:<24}{:<16}{:<16}{}{}\n", v.doc_id, v.truth, v.predicted, v.correct ? "yes" : "no",
                         v.tie ? " (tie)" : "");
  }
  table += fmt::format("TRIR {:.4f} (chance {:.4f}, population {})\n", report.trir, report.chance,
                       report.population);
  write_result(common.out,
               {{"metric", "trir"}, {"strategy", strategy_of(entries)}, {"value", report.trir},
                {"chance", report.chance}, {"population", report.population}, {"attacker", report.attacker},
                {"epochs", attacker.epochs()}, {"verdicts", verdicts}},
               table);
  manifest.output(common.out);
  manifest.write(common.out);
  spdlog::info("TRIR {:.4f} (chance {:.4f})", report.trir, report.chance);
  return 0;
}

int cmd_report(const std::vector<std::string>& results, const std::string& out) {
  // strategy -> metric -> value
  std::map<std::string, std::map<std::string, double>> rows;
  for (const auto& path : results) {
    json j;
    try {
      j = json::parse(read_file(path));
    } catch (const json::exception& e) {
      throw ParseError("'" + path + "': " + e.what());
    }
    if (!j.is_object() || !j.contains("metric") || !j.contains("strategy") || !j.contains("value")) {
      throw ParseError("'" + path + "' is not a results file");
    }
    rows[j.at("strategy").get<std::string>()][j.at("metric").get<std::string>()] = j.at("value").get<double>();
  }
  auto cell = [](const std::map<std::string, double>& m, const char* key) {
    auto it = m.find(key);
    return it == m.end() ? std::string("-") : fmt::format("{:.4f}", it->second);
  };
  std::string table = fmt::format("{:<16}{:>10}{:>10}{:>10}\n", "strategy", "TPS↑", "NMI↑", "TRIR↓");
  // Known strategies first, in their usual order, then anything else.
  std::vector<std::string> order = {"suppression", "entity_type", "least_specific", "intact", "most_specific"};
  for (const auto& [s, _] : rows) {
    if (std::find(order.begin(), order.end(), s) == order.end()) order.push_back(s);
  }
  json merged = json::array();
  for (const auto& s : order) {
    auto it = rows.find(s);
    if (it == rows.end()) continue;
    table += fmt::format("{:<16}{:>10}{:>10}{:>10}\n", s, cell(it->second, "tps"), cell(it->second, "nmi"),
                         cell(it->second, "trir"));
    json row = {{"strategy", s}};
    for (const auto& [metric, value] : it->second) row[metric] = value;
    merged.push_back(row);
  }
  write_file_atomically(out, table);
  write_file_atomically(fs::path(out + ".json"), merged.dump(2) + "\n");
  return 0;
}

int cmd_stats(const std::string& sanitized_path, std::size_t m, const std::string& out) {
  const auto entries = load_sanitized(sanitized_path);
  const auto table = selection_statistics(entries, m);
  json rows = json::array();
  for (const auto& r : table.rows) rows.push_back({{"label", r.label}, {"counts", r.counts}, {"total", r.total}});
  write_file_atomically(out, render_selection_table(table));
  write_file_atomically(fs::path(out + ".json"), json{{"m", m}, {"rows", rows}}.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("intact");
  spdlog::set_default_logger(logger);

  CLI::App app{"Truthful text sanitization and its evaluation"};
  app.require_subcommand(1);
  std::string level = "info";
  app.add_option("--log-level", level, "trace, debug, info, warn, error")->capture_default_str();

  Common common;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", common.config, "configuration file (JSON); built-in defaults if absent");
    if (needs_config) opt->check(CLI::ExistingFile);
    sub->add_option("--out", common.out, "output file")->required();
  };

  std::string corpus, strategy, sanitized, background, truth;
  auto* sanitize = app.add_subcommand("sanitize", "sanitize an annotated corpus");
  add_common(sanitize, true);
  sanitize->add_option("--corpus", corpus, "annotated corpus (JSONL)")->required()->check(CLI::ExistingFile);
  sanitize->add_option("--strategy", strategy,
                       "intact, suppression, entity_type, least_specific or most_specific (overrides config)");
  sanitize->add_option("--workers", common.workers, "documents processed in parallel")->capture_default_str();

  auto* tps = app.add_subcommand("eval-tps", "text preserved similarity of a sanitized corpus");
  add_common(tps, true);
  tps->add_option("--sanitized", sanitized, "output of `intact sanitize`")->required()->check(CLI::ExistingFile);

  bool sweep = false;
  std::size_t k_override = 0;
  auto* cluster = app.add_subcommand("eval-cluster", "clustering agreement (NMI) before and after sanitization");
  add_common(cluster, true);
  cluster->add_option("--sanitized", sanitized, "output of `intact sanitize`")->required()->check(CLI::ExistingFile);
  cluster->add_option("--k", k_override, "number of clusters (overrides config)");
  cluster->add_flag("--inertia-sweep", sweep, "also report inertia for k = 2..10 on the original documents");

  auto* risk = app.add_subcommand("eval-trir", "re-identification rate of a sanitized corpus");
  add_common(risk, true);
  risk->add_option("--background", background, "background corpus with individual_id")
      ->required()
      ->check(CLI::ExistingFile);
  risk->add_option("--sanitized", sanitized, "output of `intact sanitize`")->required()->check(CLI::ExistingFile);
  risk->add_option("--truth", truth, "doc_id to individual_id map; defaults to the corpus individual_id")
      ->check(CLI::ExistingFile);

  std::vector<std::string> results;
  std::string report_out;
  auto* report = app.add_subcommand("report", "merge result files into one table per strategy");
  report->add_option("results", results, "result files from eval-tps, eval-cluster, eval-trir")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "table file; a .json twin is written next to it")->required();

  std::size_t m = 5;
  std::string stats_out;
  auto* stats = app.add_subcommand("stats", "which candidate rank was selected, per entity label");
  stats->add_option("--sanitized", sanitized, "output of `intact sanitize`")->required()->check(CLI::ExistingFile);
  stats->add_option("-m", m, "candidates per span")->capture_default_str();
  stats->add_option("--out", stats_out, "table file; a .json twin is written next to it")->required();

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(level));

  try {
    if (*sanitize) return cmd_sanitize(common, corpus, strategy);
    if (*tps) return cmd_eval_tps(common, sanitized);
    if (*cluster) return cmd_eval_cluster(common, sanitized, sweep, k_override);
    if (*risk) return cmd_eval_trir(common, background, sanitized, truth);
    if (*report) return cmd_report(results, report_out);
    if (*stats) return cmd_stats(sanitized, m, stats_out);
  } catch (const ConfigError& e) {
    spdlog::error("configuration: {}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}
