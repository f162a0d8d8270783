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

#include "intact/gateway.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include <spdlog/spdlog.h>

namespace intact {

namespace {

std::atomic<bool> g_redact{true};

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

std::optional<Role> parse_role(std::string_view name) {
  if (name == "system") return Role::kSystem;
  if (name == "user") return Role::kUser;
  if (name == "assistant") return Role::kAssistant;
  return std::nullopt;
}

void validate(const ChatRequest& request) {
  std::size_t i = 0;
  while (i < request.messages.size() && request.messages[i].role == Role::kSystem) ++i;
  if (i == request.messages.size()) throw ResponseFormatError("chat request has no user message");
  Role expected = Role::kUser;
  for (; i < request.messages.size(); ++i) {
    if (request.messages[i].role != expected) {
      throw ResponseFormatError("chat request roles must alternate user/assistant (message " +
                                std::to_string(i) + ")");
    }
    expected = expected == Role::kUser ? Role::kAssistant : Role::kUser;
  }
}

std::uint64_t prompt_hash(const std::vector<ChatMessage>& messages) {
  std::uint64_t h = kFnvOffset;
  for (const auto& m : messages) {
    fnv(h, to_string(m.role));
    fnv(h, std::string_view("\0", 1));
    fnv(h, m.content);
    fnv(h, "\x1e");
  }
  return h;
}

std::string hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::string with_retries(const RetryPolicy& policy, std::string_view what,
                         const std::function<std::string()>& attempt,
                         const std::function<void(const std::string&)>& raise) {
  auto delay = policy.base_delay;
  for (int tries = 0;; ++tries) {
    try {
      return attempt();
    } catch (const TransientError& e) {
      if (tries >= policy.max_retries) {
        raise(std::string(what) + " failed after " + std::to_string(tries + 1) +
                         " attempts: " + e.what());
        throw Error(e.what());  // raise() is expected to throw
      }
      spdlog::warn("{}: transient failure ({}), retrying in {} ms", what, e.what(), delay.count());
      if (delay.count() > 0) std::this_thread::sleep_for(delay);
      delay = std::chrono::milliseconds(
          static_cast<long long>(static_cast<double>(delay.count()) * policy.multiplier));
    }
  }
}

void normalize(Vector& v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  if (n == 0.0) return;
  for (double& x : v) x /= n;
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double cosine(const Vector& a, const Vector& b) {
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

void check_and_normalize(const EmbedRequest& request, EmbedResponse& response) {
  if (response.vectors.size() != request.texts.size()) {
    throw ResponseFormatError("embedding response has " + std::to_string(response.vectors.size()) +
                              " vectors for " + std::to_string(request.texts.size()) + " texts");
  }
  if (!response.vectors.empty()) {
    const std::size_t dim = response.vectors.front().size();
    for (auto& v : response.vectors) {
      if (v.size() != dim || dim == 0) throw ResponseFormatError("embedding dimensions differ");
      normalize(v);
    }
  }
}

std::vector<Vector> embed_texts(Embedder& embedder, const std::string& model_id,
                                const std::vector<std::string>& texts) {
  if (texts.empty()) return {};
  EmbedRequest request{model_id, texts};
  EmbedResponse response;
  try {
    response = embedder.embed(request);
  } catch (const ResponseFormatError&) {
    throw;
  } catch (const EmbedderUnavailableError&) {
    throw;
  } catch (const Error& e) {
    throw EmbedderUnavailableError(e.what());
  }
  check_and_normalize(request, response);
  return std::move(response.vectors);
}

void set_body_redaction(bool redact) { g_redact = redact; }
bool body_redaction() { return g_redact; }

std::string loggable_body(std::string_view body) {
  if (!g_redact) return std::string(body);
  std::uint64_t h = kFnvOffset;
  fnv(h, body);
  return "<" + std::to_string(body.size()) + " bytes, fnv " + hex(h) + ">";
}

}  // namespace intact
