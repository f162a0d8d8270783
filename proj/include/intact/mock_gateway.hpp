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

#ifndef INTACT_MOCK_GATEWAY_HPP_
#define INTACT_MOCK_GATEWAY_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "intact/gateway.hpp"

namespace intact {

/// Chat model answering through a caller-supplied function.
class FunctionChatModel : public ChatModel {
 public:
  using Handler = std::function<std::string(const ChatRequest&)>;
  explicit FunctionChatModel(Handler handler) : handler_(std::move(handler)) {}
  std::string chat(const ChatRequest& request) override;

 private:
  Handler handler_;
};

/// Replays replies keyed by prompt_hash(messages). Unknown prompts go to the
/// fallback model if one is set, otherwise raise ResponseFormatError.
class ReplayChatModel : public ChatModel {
 public:
  ReplayChatModel() = default;
  explicit ReplayChatModel(ChatModel* fallback) : fallback_(fallback) {}

  void add(const std::vector<ChatMessage>& messages, std::string reply);
  void add(std::uint64_t hash, std::string reply);

  /// Loads a JSON object {"<16-hex-digit hash>": "<reply>", ...}.
  static ReplayChatModel load(const std::filesystem::path& path, ChatModel* fallback = nullptr);

  std::string chat(const ChatRequest& request) override;

 private:
  std::unordered_map<std::uint64_t, std::string> table_;
  ChatModel* fallback_ = nullptr;
};

/// Offline stand-in for an instruction model. Generation prompts receive a
/// fixed five-rung ladder per entity label; attack prompts receive the
/// bracketed candidate echoed back as the only guess.
class HeuristicChatModel : public ChatModel {
 public:
  std::string chat(const ChatRequest& request) override;
};

/// Embeds a text as a pseudo-random unit vector determined by the multiset
/// of its lowercase lemmas, so texts differing only in case, punctuation or
/// inflection coincide. Texts without alphabetic tokens map to the zero
/// vector. Scripted texts bypass the hash.
class MockEmbedder : public Embedder {
 public:
  explicit MockEmbedder(std::size_t dimension = 64, std::uint64_t seed = 0)
      : dimension_(dimension), seed_(seed) {}

  void script(std::string text, Vector vector);

  EmbedResponse embed(const EmbedRequest& request) override;
  Vector embed_one(const std::string& text) const;

  std::size_t dimension() const { return dimension_; }

  /// The hash key a text maps to: sorted lemmas joined by spaces.
  static std::string lemma_key(const std::string& text);

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
  std::unordered_map<std::string, Vector> scripted_;
};

/// Masked-token scorer with configurable probabilities: first an exact
/// (masked text, token) entry, then a per-token entry, then the default.
/// Every request is recorded.
class MockMaskScorer : public MaskScorer {
 public:
  explicit MockMaskScorer(double default_probability = 0.5) : default_(default_probability) {}

  void set(std::string masked_text, std::string token, double probability);
  void set_token(std::string token, double probability);

  MaskScoreResponse mask_score(const MaskScoreRequest& request) override;

  std::vector<MaskScoreRequest> requests() const;
  void clear_requests();

 private:
  double default_;
  std::map<std::pair<std::string, std::string>, double> exact_;
  std::unordered_map<std::string, double> by_token_;
  mutable std::mutex mutex_;
  std::vector<MaskScoreRequest> log_;
};

}  // namespace intact

#endif  // INTACT_MOCK_GATEWAY_HPP_
