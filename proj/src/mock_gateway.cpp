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

#include "intact/mock_gateway.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "intact/generation.hpp"
#include "intact/lexicon.hpp"
#include "intact/random.hpp"
#include "intact/text_analysis.hpp"
#include "intact/utf8.hpp"

namespace intact {

namespace {

std::optional<std::string> bracketed_target(std::string_view message, std::string_view marker) {
  const auto at = message.rfind(marker);
  if (at == std::string_view::npos) return std::nullopt;
  const auto open = at + marker.size();
  const auto close = message.find("]]:", open);
  if (close == std::string_view::npos) return std::nullopt;
  return std::string(message.substr(open, close - open));
}

const std::map<EntityLabel, std::vector<std::string>>& heuristic_ladders() {
  static const std::map<EntityLabel, std::vector<std::string>> ladders = {
      {EntityLabel::kOrg,
       {"a specific organisation", "an organisation", "an institution", "a body", "an entity"}},
      {EntityLabel::kDatetime,
       {"a specific date", "a certain day", "a certain period", "some time", "a point in time"}},
      {EntityLabel::kLoc, {"a specific place", "a locality", "a region", "a country", "a place"}},
      {EntityLabel::kQuantity, {"a specific number", "several", "a number of", "some", "an amount"}},
      {EntityLabel::kDem,
       {"a specific group", "a demographic group", "a community", "a group", "people"}},
      {EntityLabel::kMisc,
       {"a specific matter", "a particular matter", "a circumstance", "a thing", "something"}},
  };
  return ladders;
}

}  // namespace

std::string FunctionChatModel::chat(const ChatRequest& request) {
  validate(request);
  return handler_(request);
}

void ReplayChatModel::add(const std::vector<ChatMessage>& messages, std::string reply) {
  table_[prompt_hash(messages)] = std::move(reply);
}

void ReplayChatModel::add(std::uint64_t hash, std::string reply) { table_[hash] = std::move(reply); }

ReplayChatModel ReplayChatModel::load(const std::filesystem::path& path, ChatModel* fallback) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open replay file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("replay file '" + path.string() + "': " + e.what());
  }
  ReplayChatModel model(fallback);
  for (const auto& [key, value] : j.items()) {
    model.add(std::stoull(key, nullptr, 16), value.get<std::string>());
  }
  return model;
}

std::string ReplayChatModel::chat(const ChatRequest& request) {
  validate(request);
  const auto hash = prompt_hash(request.messages);
  if (auto it = table_.find(hash); it != table_.end()) return it->second;
  if (fallback_) return fallback_->chat(request);
  throw ResponseFormatError("no scripted reply for prompt " + hex(hash));
}

std::string HeuristicChatModel::chat(const ChatRequest& request) {
  validate(request);
  const std::string& last = request.messages.back().content;
  if (auto target = bracketed_target(last, "Guesses for [[")) return "- " + *target;
  if (bracketed_target(last, "Sorted replacements for [[")) {
    const std::string& first = request.messages.front().content;
    for (const auto& [label, example] : PromptBundle::standard().examples) {
      if (first.find(example.sentence) != std::string::npos) {
        return render_list(heuristic_ladders().at(label));
      }
    }
    return render_list(heuristic_ladders().at(EntityLabel::kMisc));
  }
  throw ResponseFormatError("heuristic model does not recognise the prompt");
}

void MockEmbedder::script(std::string text, Vector vector) {
  normalize(vector);
  scripted_[std::move(text)] = std::move(vector);
}

std::string MockEmbedder::lemma_key(const std::string& text) {
  std::vector<std::string> lemmas;
  for (const Token& t : tokenize(text)) {
    if (!is_alphabetic(t.text)) continue;
    lemmas.push_back(Lexicon::english().lemma(utf8::to_lower(t.text)));
  }
  std::sort(lemmas.begin(), lemmas.end());
  std::string key;
  for (const auto& l : lemmas) {
    if (!key.empty()) key += ' ';
    key += l;
  }
  return key;
}

Vector MockEmbedder::embed_one(const std::string& text) const {
  if (auto it = scripted_.find(text); it != scripted_.end()) {
    Vector v = it->second;
    v.resize(dimension_, 0.0);
    return v;
  }
  const std::string key = lemma_key(text);
  Vector v(dimension_, 0.0);
  if (key.empty()) return v;
  SplitMix64 rng(fnv1a(key) ^ seed_);
  for (double& x : v) x = rng.gaussian();
  normalize(v);
  return v;
}

EmbedResponse MockEmbedder::embed(const EmbedRequest& request) {
  EmbedResponse response;
  response.vectors.reserve(request.texts.size());
  for (const auto& t : request.texts) response.vectors.push_back(embed_one(t));
  return response;
}

void MockMaskScorer::set(std::string masked_text, std::string token, double probability) {
  exact_[{std::move(masked_text), std::move(token)}] = probability;
}

void MockMaskScorer::set_token(std::string token, double probability) {
  by_token_[std::move(token)] = probability;
}

MaskScoreResponse MockMaskScorer::mask_score(const MaskScoreRequest& request) {
  if (request.positions.size() != request.candidates.size()) {
    throw ResponseFormatError("mask-score request: positions and candidates differ in length");
  }
  MaskScoreResponse response;
  for (const auto& token : request.candidates) {
    double p = default_;
    if (auto it = exact_.find({request.text, token}); it != exact_.end()) {
      p = it->second;
    } else if (auto jt = by_token_.find(token); jt != by_token_.end()) {
      p = jt->second;
    }
    response.probabilities.push_back(p);
  }
  {
    std::lock_guard lock(mutex_);
    log_.push_back(request);
  }
  return response;
}

std::vector<MaskScoreRequest> MockMaskScorer::requests() const {
  std::lock_guard lock(mutex_);
  return log_;
}

void MockMaskScorer::clear_requests() {
  std::lock_guard lock(mutex_);
  log_.clear();
}

}  // namespace intact
