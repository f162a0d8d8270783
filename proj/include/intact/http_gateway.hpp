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

#ifndef INTACT_HTTP_GATEWAY_HPP_
#define INTACT_HTTP_GATEWAY_HPP_

#include <chrono>
#include <string>
#include <string_view>

#include "intact/gateway.hpp"

namespace intact {

/// A model service endpoint. `url` is the full endpoint URL, e.g.
/// http://localhost:8000/v1/chat/completions (plain HTTP only).
struct HttpEndpoint {
  std::string url;
  std::string api_key;
  std::chrono::milliseconds timeout{120000};
  RetryPolicy retry;
};

// Wire formats. Chat and embeddings follow the OpenAI-compatible shapes;
// masked scoring uses {text, sentinel, positions, candidates} ->
// {probabilities}.

std::string chat_request_body(const ChatRequest& request);
ChatRequest parse_chat_request_body(std::string_view body);
std::string chat_response_body(std::string_view reply, std::string_view model_id);
std::string parse_chat_response(std::string_view body);

std::string embed_request_body(const EmbedRequest& request);
EmbedRequest parse_embed_request_body(std::string_view body);
std::string embed_response_body(const EmbedResponse& response, std::string_view model_id);
EmbedResponse parse_embed_response(std::string_view body);

std::string mask_score_request_body(const MaskScoreRequest& request);
MaskScoreRequest parse_mask_score_request_body(std::string_view body);
std::string mask_score_response_body(const MaskScoreResponse& response);
MaskScoreResponse parse_mask_score_response(std::string_view body);

/// POSTs `body` as JSON and returns the response body. Connection errors,
/// timeouts, 429 and 5xx raise TransientError; other non-2xx statuses
/// raise ResponseFormatError.
std::string post_json(const HttpEndpoint& endpoint, std::string_view body);

class HttpChatModel : public ChatModel {
 public:
  explicit HttpChatModel(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::string chat(const ChatRequest& request) override;

 private:
  HttpEndpoint endpoint_;
};

class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  EmbedResponse embed(const EmbedRequest& request) override;

 private:
  HttpEndpoint endpoint_;
};

class HttpMaskScorer : public MaskScorer {
 public:
  explicit HttpMaskScorer(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  MaskScoreResponse mask_score(const MaskScoreRequest& request) override;

 private:
  HttpEndpoint endpoint_;
};

}  // namespace intact

#endif  // INTACT_HTTP_GATEWAY_HPP_
