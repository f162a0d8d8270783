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

#include "intact/http_gateway.hpp"

#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

namespace intact {

using json = nlohmann::json;

namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint URL lacks a scheme: '" + url + "'");
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http") {
    throw ConfigError("only http:// endpoints are supported (got '" + url + "')");
  }
  const auto path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) return {url, "/"};
  return {url.substr(0, path_begin), url.substr(path_begin)};
}

json parse_body(std::string_view body, std::string_view what) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ResponseFormatError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

}  // namespace

std::string chat_request_body(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", std::string(to_string(m.role))}, {"content", m.content}});
  }
  json j = {{"model", request.model_id},
            {"messages", std::move(messages)},
            {"temperature", request.temperature},
            {"max_tokens", request.max_new_tokens}};
  if (request.seed) j["seed"] = *request.seed;
  return j.dump();
}

ChatRequest parse_chat_request_body(std::string_view body) {
  const json j = parse_body(body, "chat request");
  ChatRequest r;
  try {
    r.model_id = j.value("model", "");
    for (const auto& m : j.at("messages")) {
      auto role = parse_role(m.at("role").get<std::string>());
      if (!role) throw ResponseFormatError("unknown chat role");
      r.messages.push_back({*role, m.at("content").get<std::string>()});
    }
    r.temperature = j.value("temperature", 0.3);
    r.max_new_tokens = j.value("max_tokens", 512);
    if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ResponseFormatError(std::string("chat request: ") + e.what());
  }
  return r;
}

std::string chat_response_body(std::string_view reply, std::string_view model_id) {
  json j = {{"object", "chat.completion"},
            {"model", std::string(model_id)},
            {"choices",
             json::array({{{"index", 0},
                           {"message", {{"role", "assistant"}, {"content", std::string(reply)}}},
                           {"finish_reason", "stop"}}})}};
  return j.dump();
}

std::string parse_chat_response(std::string_view body) {
  const json j = parse_body(body, "chat response");
  try {
    const auto& content = j.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw ResponseFormatError("chat response content is not a string");
    return content.get<std::string>();
  } catch (const json::exception& e) {
    throw ResponseFormatError(std::string("chat response: ") + e.what());
  }
}

std::string embed_request_body(const EmbedRequest& request) {
  return json{{"model", request.model_id}, {"input", request.texts}}.dump();
}

EmbedRequest parse_embed_request_body(std::string_view body) {
  const json j = parse_body(body, "embedding request");
  EmbedRequest r;
  try {
    r.model_id = j.value("model", "");
    const auto& input = j.at("input");
    if (input.is_string()) {
      r.texts.push_back(input.get<std::string>());
    } else {
      r.texts = input.get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw ResponseFormatError(std::string("embedding request: ") + e.what());
  }
  return r;
}

std::string embed_response_body(const EmbedResponse& response, std::string_view model_id) {
  json data = json::array();
  for (std::size_t i = 0; i < response.vectors.size(); ++i) {
    data.push_back({{"object", "embedding"}, {"index", i}, {"embedding", response.vectors[i]}});
  }
  return json{{"object", "list"}, {"model", std::string(model_id)}, {"data", std::move(data)}}.dump();
}

EmbedResponse parse_embed_response(std::string_view body) {
  const json j = parse_body(body, "embedding response");
  EmbedResponse r;
  try {
    const auto& data = j.at("data");
    r.vectors.resize(data.size());
    std::vector<bool> seen(data.size(), false);
    for (const auto& item : data) {
      const std::size_t index = item.at("index").get<std::size_t>();
      if (index >= data.size() || seen[index]) throw ResponseFormatError("bad embedding index");
      seen[index] = true;
      r.vectors[index] = item.at("embedding").get<Vector>();
    }
  } catch (const json::exception& e) {
    throw ResponseFormatError(std::string("embedding response: ") + e.what());
  }
  return r;
}

std::string mask_score_request_body(const MaskScoreRequest& request) {
  return json{{"model", request.model_id},
              {"text", request.text},
              {"sentinel", request.sentinel},
              {"positions", request.positions},
              {"candidates", request.candidates}}
      .dump();
}

MaskScoreRequest parse_mask_score_request_body(std::string_view body) {
  const json j = parse_body(body, "mask-score request");
  MaskScoreRequest r;
  try {
    r.model_id = j.value("model", "");
    r.text = j.at("text").get<std::string>();
    r.sentinel = j.value("sentinel", "[MASK]");
    r.positions = j.at("positions").get<std::vector<std::size_t>>();
    r.candidates = j.at("candidates").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ResponseFormatError(std::string("mask-score request: ") + e.what());
  }
  if (r.positions.size() != r.candidates.size()) {
    throw ResponseFormatError("mask-score request: positions and candidates differ in length");
  }
  return r;
}

std::string mask_score_response_body(const MaskScoreResponse& response) {
  return json{{"probabilities", response.probabilities}}.dump();
}

MaskScoreResponse parse_mask_score_response(std::string_view body) {
  const json j = parse_body(body, "mask-score response");
  MaskScoreResponse r;
  try {
    r.probabilities = j.at("probabilities").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ResponseFormatError(std::string("mask-score response: ") + e.what());
  }
  return r;
}

std::string post_json(const HttpEndpoint& endpoint, std::string_view body) {
  const ParsedUrl url = split_url(endpoint.url);
  httplib::Client client(url.origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(endpoint.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  httplib::Headers headers;
  if (!endpoint.api_key.empty()) headers.emplace("Authorization", "Bearer " + endpoint.api_key);

  spdlog::debug("POST {} body {}", endpoint.url, loggable_body(body));
  auto result = client.Post(url.path, headers, std::string(body), "application/json");
  if (!result) {
    throw TransientError("POST " + endpoint.url + ": " + httplib::to_string(result.error()));
  }
  spdlog::debug("POST {} -> {} body {}", endpoint.url, result->status, loggable_body(result->body));
  if (result->status == 429 || result->status >= 500) {
    throw TransientError("POST " + endpoint.url + ": HTTP " + std::to_string(result->status));
  }
  if (result->status < 200 || result->status >= 300) {
    throw ResponseFormatError("POST " + endpoint.url + ": HTTP " + std::to_string(result->status) +
                              ": " + result->body.substr(0, 200));
  }
  return result->body;
}

std::string HttpChatModel::chat(const ChatRequest& request) {
  validate(request);
  const std::string body = chat_request_body(request);
  spdlog::debug("chat request {} ({} messages)", request.request_id, request.messages.size());
  const std::string response = with_retries(
      endpoint_.retry, "chat " + request.request_id, [&] { return post_json(endpoint_, body); },
      [](const std::string& msg) { throw ModelUnavailableError(msg); });
  return parse_chat_response(response);
}

EmbedResponse HttpEmbedder::embed(const EmbedRequest& request) {
  const std::string body = embed_request_body(request);
  const std::string response = with_retries(
      endpoint_.retry, "embed", [&] { return post_json(endpoint_, body); },
      [](const std::string& msg) { throw EmbedderUnavailableError(msg); });
  EmbedResponse parsed = parse_embed_response(response);
  check_and_normalize(request, parsed);
  return parsed;
}

MaskScoreResponse HttpMaskScorer::mask_score(const MaskScoreRequest& request) {
  const std::string body = mask_score_request_body(request);
  const std::string response = with_retries(
      endpoint_.retry, "mask_score", [&] { return post_json(endpoint_, body); },
      [](const std::string& msg) { throw ScorerUnavailableError(msg); });
  MaskScoreResponse parsed = parse_mask_score_response(response);
  if (parsed.probabilities.size() != request.candidates.size()) {
    throw ResponseFormatError("mask-score response has " + std::to_string(parsed.probabilities.size()) +
                              " probabilities for " + std::to_string(request.candidates.size()) +
                              " positions");
  }
  return parsed;
}

}  // namespace intact
