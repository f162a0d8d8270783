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

#include "intact/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "intact/errors.hpp"
#include "intact/http_gateway.hpp"
#include "intact/mock_gateway.hpp"
#include "intact/resources.hpp"

namespace intact {

namespace {

using nlohmann::json;

/// Walks one JSON object, recording which keys were read so leftovers can
/// be reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(fmt::format("config field '{}' must be an object", where()));
  }

  Section child(const std::string& key) {
    return Section(field(key), qualified(key));
  }

  template <typename T>
  T get(const std::string& key) {
    const json& v = field(key);
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      throw ConfigError(fmt::format("config field '{}' has the wrong type", qualified(key)));
    }
  }

  std::size_t count(const std::string& key, std::size_t min = 0) {
    const json& v = field(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError(fmt::format("config field '{}' must be a non-negative integer", qualified(key)));
    }
    const auto n = v.get<std::size_t>();
    if (n < min) throw ConfigError(fmt::format("config field '{}' must be at least {}", qualified(key), min));
    return n;
  }

  double number(const std::string& key) {
    const json& v = field(key);
    if (!v.is_number()) throw ConfigError(fmt::format("config field '{}' must be a number", qualified(key)));
    return v.get<double>();
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!read_.count(key)) throw ConfigError(fmt::format("unknown config field '{}'", qualified(key)));
    }
  }

 private:
  std::string where() const { return path_.empty() ? "<root>" : path_; }
  std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& field(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(fmt::format("missing config field '{}'", qualified(key)));
    read_.insert(key);
    return j_.at(key);
  }

  const json& j_;
  std::string path_;
  std::set<std::string> read_;
};

}  // namespace

std::string_view default_config_json() {
  static const auto text = resources::find("configs/default.json");
  if (!text) throw ConfigError("default configuration is not compiled in");
  return *text;
}

Config parse_config(std::string_view text, std::string_view source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: {}", source, e.what()));
  }

  Config c;
  Section root(j, "");
  c.seed = root.get<std::uint64_t>("seed");
  const auto strategy_name = root.get<std::string>("strategy");
  const auto strategy = parse_strategy(strategy_name);
  if (!strategy) throw ConfigError("config field 'strategy': unknown strategy '" + strategy_name + "'");
  c.pipeline.strategy = *strategy;

  {
    auto g = root.child("generation");
    c.pipeline.generation.m = g.count("m", 1);
    c.pipeline.generation.temperature = g.number("temperature");
    c.pipeline.generation.max_new_tokens = g.get<int>("max_new_tokens");
    c.pipeline.generation.model_id = g.get<std::string>("model_id");
    c.pipeline.generation_retries = g.get<int>("retries");
    g.finish();
  }
  {
    auto a = root.child("attack");
    c.pipeline.attack.p = a.count("p", 1);
    c.pipeline.attack.temperature = a.number("temperature");
    c.pipeline.attack.max_new_tokens = a.get<int>("max_new_tokens");
    c.pipeline.attack.model_id = a.get<std::string>("model_id");
    c.pipeline.early_exit = a.get<bool>("early_exit");
    a.finish();
  }
  {
    auto m = root.child("matching");
    c.pipeline.match.ngram_n = static_cast<int>(m.count("ngram_n", 1));
    c.pipeline.match.high_freq_rank_cutoff = m.count("high_freq_rank_cutoff");
    c.pipeline.match.stopword_list_id = m.get<std::string>("stopword_list_id");
    if (c.pipeline.match.stopword_list_id != "stopwords_en") {
      throw ConfigError("config field 'matching.stopword_list_id': only 'stopwords_en' is available");
    }
    m.finish();
  }
  {
    auto s = root.child("scoring");
    c.scoring.spacing = s.count("spacing", 2);
    c.scoring.mask_sentinel = s.get<std::string>("mask_sentinel");
    c.scoring.scorer_model_id = s.get<std::string>("model_id");
    c.scoring.floor = s.number("probability_floor");
    c.log_base = s.number("log_base");
    if (!(c.scoring.floor > 0.0 && c.scoring.floor < 1.0)) {
      throw ConfigError("config field 'scoring.probability_floor' must lie in (0, 1)");
    }
    if (!(c.log_base > 0.0) || c.log_base == 1.0) {
      throw ConfigError("config field 'scoring.log_base' must be positive and not 1");
    }
    s.finish();
  }
  {
    auto e = root.child("embedding");
    c.similarity_model_id = e.get<std::string>("similarity_model_id");
    c.document_model_id = e.get<std::string>("document_model_id");
    e.finish();
  }
  {
    auto k = root.child("clustering");
    c.clustering.k = k.count("k", 1);
    c.clustering.restarts = k.count("restarts", 1);
    c.clustering.nmi_runs = k.count("nmi_runs", 1);
    c.clustering.max_iterations = k.count("max_iterations", 1);
    k.finish();
  }
  {
    auto r = root.child("risk");
    c.train.learning_rate = r.number("learning_rate");
    c.train.l2 = r.number("l2");
    c.train.max_epochs = r.count("max_epochs", 1);
    c.train.tolerance = r.number("tolerance");
    c.truncate_fraction = r.number("truncate_fraction");
    r.finish();
  }
  {
    auto g = root.child("gateway");
    c.gateway.backend = g.get<std::string>("backend");
    if (c.gateway.backend != "mock" && c.gateway.backend != "http") {
      throw ConfigError("config field 'gateway.backend' must be \"mock\" or \"http\"");
    }
    c.gateway.chat_url = g.get<std::string>("chat_url");
    c.gateway.embed_url = g.get<std::string>("embed_url");
    c.gateway.score_url = g.get<std::string>("score_url");
    c.gateway.api_key = g.get<std::string>("api_key");
    c.gateway.timeout = std::chrono::milliseconds(g.count("timeout_ms", 1));
    c.gateway.retry.max_retries = static_cast<int>(g.count("max_retries"));
    c.gateway.retry.base_delay = std::chrono::milliseconds(g.count("backoff_ms"));
    auto m = g.child("mock");
    c.gateway.mock.embed_dim = m.count("embed_dim", 1);
    c.gateway.mock.embed_seed = m.get<std::uint64_t>("embed_seed");
    c.gateway.mock.score_default = m.number("score_default");
    c.gateway.mock.replay_file = m.get<std::string>("replay_file");
    m.finish();
    g.finish();
  }
  {
    auto l = root.child("logging");
    c.redact_bodies = l.get<bool>("redact_bodies");
    l.finish();
  }
  root.finish();

  c.pipeline.rng_seed = c.seed;
  c.clustering.rng_seed = c.seed;
  c.train.seed = c.seed;
  c.train.embed_model_id = c.document_model_id;
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Config c = parse_config(text, path.string());
  apply_environment(c.gateway);
  return c;
}

void apply_environment(GatewayConfig& gateway) {
  auto take = [](const char* name, std::string& target) {
    if (const char* v = std::getenv(name); v != nullptr && *v != '\0') target = v;
  };
  take("INTACT_CHAT_URL", gateway.chat_url);
  take("INTACT_EMBED_URL", gateway.embed_url);
  take("INTACT_SCORE_URL", gateway.score_url);
  take("INTACT_API_KEY", gateway.api_key);
}

std::string config_to_json(const Config& c) {
  json j;
  j["seed"] = c.seed;
  j["strategy"] = std::string(to_string(c.pipeline.strategy));
  j["generation"] = {{"m", c.pipeline.generation.m},
                     {"temperature", c.pipeline.generation.temperature},
                     {"max_new_tokens", c.pipeline.generation.max_new_tokens},
                     {"model_id", c.pipeline.generation.model_id},
                     {"retries", c.pipeline.generation_retries}};
  j["attack"] = {{"p", c.pipeline.attack.p},
                 {"temperature", c.pipeline.attack.temperature},
                 {"max_new_tokens", c.pipeline.attack.max_new_tokens},
                 {"model_id", c.pipeline.attack.model_id},
                 {"early_exit", c.pipeline.early_exit}};
  j["matching"] = {{"ngram_n", c.pipeline.match.ngram_n},
                   {"high_freq_rank_cutoff", c.pipeline.match.high_freq_rank_cutoff},
                   {"stopword_list_id", c.pipeline.match.stopword_list_id}};
  j["scoring"] = {{"spacing", c.scoring.spacing},
                  {"mask_sentinel", c.scoring.mask_sentinel},
                  {"model_id", c.scoring.scorer_model_id},
                  {"probability_floor", c.scoring.floor},
                  {"log_base", c.log_base}};
  j["embedding"] = {{"similarity_model_id", c.similarity_model_id},
                    {"document_model_id", c.document_model_id}};
  j["clustering"] = {{"k", c.clustering.k},
                     {"restarts", c.clustering.restarts},
                     {"nmi_runs", c.clustering.nmi_runs},
                     {"max_iterations", c.clustering.max_iterations}};
  j["risk"] = {{"learning_rate", c.train.learning_rate},
               {"l2", c.train.l2},
               {"max_epochs", c.train.max_epochs},
               {"tolerance", c.train.tolerance},
               {"truncate_fraction", c.truncate_fraction}};
  j["gateway"] = {{"backend", c.gateway.backend},
                  {"chat_url", c.gateway.chat_url},
                  {"embed_url", c.gateway.embed_url},
                  {"score_url", c.gateway.score_url},
                  {"api_key", ""},
                  {"timeout_ms", c.gateway.timeout.count()},
                  {"max_retries", c.gateway.retry.max_retries},
                  {"backoff_ms", c.gateway.retry.base_delay.count()},
                  {"mock",
                   {{"embed_dim", c.gateway.mock.embed_dim},
                    {"embed_seed", c.gateway.mock.embed_seed},
                    {"score_default", c.gateway.mock.score_default},
                    {"replay_file", c.gateway.mock.replay_file}}}};
  j["logging"] = {{"redact_bodies", c.redact_bodies}};
  return j.dump(2);
}

Backends make_backends(const GatewayConfig& gateway) {
  Backends b;
  if (gateway.backend == "http") {
    auto endpoint = [&](const std::string& url) {
      HttpEndpoint e;
      e.url = url;
      e.api_key = gateway.api_key;
      e.timeout = gateway.timeout;
      e.retry = gateway.retry;
      return e;
    };
    b.chat = std::make_unique<HttpChatModel>(endpoint(gateway.chat_url));
    b.embedder = std::make_unique<HttpEmbedder>(endpoint(gateway.embed_url));
    b.scorer = std::make_unique<HttpMaskScorer>(endpoint(gateway.score_url));
    return b;
  }
  if (gateway.mock.replay_file.empty()) {
    b.chat = std::make_unique<HeuristicChatModel>();
  } else {
    b.chat_fallback = std::make_unique<HeuristicChatModel>();
    b.chat = std::make_unique<ReplayChatModel>(
        ReplayChatModel::load(gateway.mock.replay_file, b.chat_fallback.get()));
  }
  b.embedder = std::make_unique<MockEmbedder>(gateway.mock.embed_dim, gateway.mock.embed_seed);
  b.scorer = std::make_unique<MockMaskScorer>(gateway.mock.score_default);
  return b;
}

}  // namespace intact
