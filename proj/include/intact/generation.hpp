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

#ifndef INTACT_GENERATION_HPP_
#define INTACT_GENERATION_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intact/document.hpp"
#include "intact/gateway.hpp"
#include "intact/text_analysis.hpp"

namespace intact {

struct GenerationConfig {
  std::size_t m = 5;
  double temperature = 0.3;
  int max_new_tokens = 512;
  std::string model_id;
};

struct OneShotExample {
  std::string sentence;  // with the target in double square brackets
  std::string target;
  std::vector<std::string> replacements;
};

/// Generation prompt: the instruction turn template (placeholders
/// {sentence} and {target}), the final user turn template, and one
/// example per model-handled label.
struct PromptBundle {
  std::string example_turn;
  std::string target_turn;
  std::map<EntityLabel, OneShotExample> examples;

  /// The bundle compiled from resources/prompts.
  static const PromptBundle& standard();

  /// Parses the example file format: "[LABEL]" header, the bracketed
  /// sentence, then "- replacement" lines.
  static std::map<EntityLabel, OneShotExample> parse_examples(std::string_view text);
};

/// Replaces every "[[" / "]]" in source text by "[ [" / "] ]" so the target
/// delimiters stay unique.
std::string escape_brackets(std::string_view text);

/// Pads escaped text with a space where a leading '[' or trailing ']'
/// would run into the enclosing double brackets.
std::string pad_for_brackets(std::string inner);

/// The sentence with the byte range `target` wrapped in double brackets.
std::string bracket_target(std::string_view sentence, ByteRange target);

/// Replaces {name} placeholders; unknown placeholders are left untouched.
std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& values);

/// Three-turn chat (user instruction + example, assistant example answer,
/// user target). Throws UnsupportedLabelError for CODE and PERSON.
std::vector<ChatMessage> build_generation_prompt(const PiiSpan& span, const SentenceContext& ctx,
                                                 const PromptBundle& bundle = PromptBundle::standard());

/// Hyphen-prefixed lines, one per item.
std::string render_list(const std::vector<std::string>& items);

/// Items of hyphen-prefixed lines, trimmed and unquoted, in order. Empty
/// items are skipped; at most `limit` are returned.
std::vector<std::string> parse_hyphen_list(std::string_view reply, std::size_t limit);

/// The first m candidates of a reply; MalformedReplyError if fewer than m.
std::vector<std::string> parse_candidates(std::string_view reply, std::size_t m);

/// Per-document running numbers per label, allocated per entity on first
/// request ("PERSON_1", "PERSON_2", ...).
class LabelCounters {
 public:
  std::string assign(EntityLabel label, const std::string& entity_id);
  std::optional<std::string> find(EntityLabel label, const std::string& entity_id) const;

 private:
  std::map<EntityLabel, std::size_t> next_;
  std::map<std::pair<EntityLabel, std::string>, std::string> assigned_;
};

/// Single-candidate list "LABEL_k" for a PERSON or CODE span.
CandidateList generalize_direct_identifier(const PiiSpan& span, LabelCounters& counters);

}  // namespace intact

#endif  // INTACT_GENERATION_HPP_
