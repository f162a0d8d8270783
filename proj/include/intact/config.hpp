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

#ifndef INTACT_CONFIG_HPP_
#define INTACT_CONFIG_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "intact/clustering.hpp"
#include "intact/gateway.hpp"
#include "intact/pipeline.hpp"
#include "intact/privacy_risk.hpp"
#include "intact/utility_metrics.hpp"

namespace intact {

struct MockBackendConfig {
  std::size_t embed_dim = 64;
  std::uint64_t embed_seed = 0;
  double score_default = 0.5;
  std::string replay_file;  // empty: heuristic replies only
};

struct GatewayConfig {
  std::string backend = "mock";  // "mock" or "http"
  std::string chat_url;
  std::string embed_url;
  std::string score_url;
  std::string api_key;
  std::chrono::milliseconds timeout{120000};
  RetryPolicy retry;
  MockBackendConfig mock;
};

struct Config {
  std::uint64_t seed = 0;
  PipelineConfig pipeline;
  MaskScoringConfig scoring;
  double log_base = M_E;
  std::string similarity_model_id;  // TPS similarities
  std::string document_model_id;    // clustering and attacker features
  ClusteringConfig clustering;
  TrainConfig train;
  double truncate_fraction = 1.0;
  GatewayConfig gateway;
  bool redact_bodies = true;
};

/// The default configuration file, carrying every setting.
std::string_view default_config_json();

/// Parses a configuration. Every field must be present and no unknown
/// field is accepted; ConfigError names the offending field.
Config parse_config(std::string_view json, std::string_view source = "<config>");
Config load_config(const std::filesystem::path& path);

/// Overrides endpoint settings from INTACT_CHAT_URL, INTACT_EMBED_URL,
/// INTACT_SCORE_URL and INTACT_API_KEY when set.
void apply_environment(GatewayConfig& gateway);

/// Canonical JSON of a configuration, as recorded in run manifests. The
/// API key is never written.
std::string config_to_json(const Config& config);

struct Backends {
  std::unique_ptr<ChatModel> chat;
  std::unique_ptr<ChatModel> chat_fallback;  // behind a replay table
  std::unique_ptr<Embedder> embedder;
  std::unique_ptr<MaskScorer> scorer;
};

Backends make_backends(const GatewayConfig& gateway);

}  // namespace intact

#endif  // INTACT_CONFIG_HPP_
