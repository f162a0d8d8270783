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

#ifndef INTACT_GATEWAY_HPP_
#define INTACT_GATEWAY_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intact/errors.hpp"

namespace intact {

enum class Role { kSystem, kUser, kAssistant };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view name);

struct ChatMessage {
  Role role = Role::kUser;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  std::string model_id;
  std::vector<ChatMessage> messages;
  double temperature = 0.3;
  int max_new_tokens = 512;
  std::optional<std::uint64_t> seed;
  std::string request_id;
};

/// Throws ResponseFormatError unless roles alternate user/assistant,
/// starting with a user turn after any leading system messages.
void validate(const ChatRequest& request);

/// FNV-1a hash over roles and contents; keys replay tables.
std::uint64_t prompt_hash(const std::vector<ChatMessage>& messages);
std::string hex(std::uint64_t value);

class ChatModel {
 public:
  virtual ~ChatModel() = default;
  /// Returns the assistant reply for `request`.
  virtual std::string chat(const ChatRequest& request) = 0;
};

using Vector = std::vector<double>;

struct EmbedRequest {
  std::string model_id;
  std::vector<std::string> texts;
};

struct EmbedResponse {
  std::vector<Vector> vectors;  // unit length, or all-zero for empty input
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual EmbedResponse embed(const EmbedRequest& request) = 0;
};

/// Masked-token scoring. `positions` are the scalar offsets of each
/// sentinel occurrence in `text`; `candidates[i]` is the token whose
/// probability is requested at `positions[i]`.
struct MaskScoreRequest {
  std::string model_id;
  std::string text;
  std::string sentinel = "[MASK]";
  std::vector<std::size_t> positions;
  std::vector<std::string> candidates;
};

struct MaskScoreResponse {
  std::vector<double> probabilities;
};

class MaskScorer {
 public:
  virtual ~MaskScorer() = default;
  virtual MaskScoreResponse mask_score(const MaskScoreRequest& request) = 0;
};

/// Signals a failure worth retrying (connection error, timeout, 429, 5xx).
class TransientError : public Error {
 public:
  using Error::Error;
};

struct RetryPolicy {
  int max_retries = 2;
  std::chrono::milliseconds base_delay{250};
  double multiplier = 2.0;
};

/// Runs `attempt`, retrying on TransientError with exponential backoff.
/// After the last retry the failure goes to `raise`, which must throw.
std::string with_retries(const RetryPolicy& policy, std::string_view what,
                         const std::function<std::string()>& attempt,
                         const std::function<void(const std::string&)>& raise);

/// Scales `v` to unit length in place; zero vectors stay zero.
void normalize(Vector& v);

double dot(const Vector& a, const Vector& b);

/// Cosine similarity; 0 when either vector is zero.
double cosine(const Vector& a, const Vector& b);

/// Checks count and dimension of a response and unit-normalizes it.
void check_and_normalize(const EmbedRequest& request, EmbedResponse& response);

/// Embeds `texts` and returns one vector per text, going through
/// check_and_normalize. Errors other than ResponseFormatError surface as
/// EmbedderUnavailableError.
std::vector<Vector> embed_texts(Embedder& embedder, const std::string& model_id,
                                const std::vector<std::string>& texts);

/// Debug logging of request/response bodies; redaction replaces bodies by
/// their length and hash.
void set_body_redaction(bool redact);
bool body_redaction();
std::string loggable_body(std::string_view body);

}  // namespace intact

#endif  // INTACT_GATEWAY_HPP_
