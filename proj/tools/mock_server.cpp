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

// Reference server for the three model endpoints, backed by the mocks.
// Lets the HTTP path be exercised end to end without a GPU.

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include <csignal>
#include <string>

#include <spdlog/spdlog.h>

#include "intact/config.hpp"
#include "intact/errors.hpp"
#include "intact/http_gateway.hpp"
#include "intact/mock_gateway.hpp"

using namespace intact;

namespace {

httplib::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

template <typename Fn>
void handle(httplib::Response& res, Fn&& fn) {
  try {
    res.set_content(fn(), "application/json");
  } catch (const std::exception& e) {
    res.status = 400;
    res.set_content(std::string("{\"error\": ") + nlohmann::json(e.what()).dump() + "}", "application/json");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mock model server: chat, embeddings and masked-token scoring"};
  std::string host = "127.0.0.1";
  int port = 8000;
  std::string config_path;
  app.add_option("--host", host, "bind address")->capture_default_str();
  app.add_option("--port", port, "port; 0 picks a free one")->capture_default_str();
  app.add_option("--config", config_path, "configuration whose gateway.mock section is used")
      ->check(CLI::ExistingFile);
  CLI11_PARSE(app, argc, argv);

  Config config;
  try {
    config = config_path.empty() ? parse_config(default_config_json()) : load_config(config_path);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  GatewayConfig mock = config.gateway;
  mock.backend = "mock";
  Backends backends = make_backends(mock);

  httplib::Server server;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] {
      const ChatRequest r = parse_chat_request_body(req.body);
      return chat_response_body(backends.chat->chat(r), r.model_id);
    });
  });
  server.Post("/v1/embeddings", [&](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] {
      const EmbedRequest r = parse_embed_request_body(req.body);
      return embed_response_body(backends.embedder->embed(r), r.model_id);
    });
  });
  server.Post("/v1/mask_score", [&](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] { return mask_score_response_body(backends.scorer->mask_score(parse_mask_score_request_body(req.body))); });
  });
  server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"status\": \"ok\"}", "application/json");
  });

  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  if (port == 0) {
    port = server.bind_to_any_port(host);
  } else if (!server.bind_to_port(host, port)) {
    spdlog::error("cannot bind {}:{}", host, port);
    return 1;
  }
  spdlog::info("listening on http://{}:{}", host, port);
  server.listen_after_bind();
  return 0;
}
