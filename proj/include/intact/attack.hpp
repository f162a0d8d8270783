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

#ifndef INTACT_ATTACK_HPP_
#define INTACT_ATTACK_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "intact/document.hpp"
#include "intact/gateway.hpp"

namespace intact {

struct AttackConfig {
  std::size_t p = 5;
  double temperature = 0.3;
  int max_new_tokens = 512;
  std::string model_id;
};

/// The fixed one-shot attack prompt: instruction + example turn, the
/// example answer, and the target turn template ({text}, {target}).
struct AttackPrompt {
  std::string example_turn;
  std::string example_answer;
  std::string target_turn;

  static const AttackPrompt& standard();
};

/// What a span currently shows in the sanitized draft: its selected
/// replacement once chosen, its first candidate before that.
struct SpanDraft {
  std::string first_candidate;
  std::optional<std::string> selected;

  const std::string& shown() const { return selected ? *selected : first_candidate; }
};

/// The full document with every span replaced by its draft text and the
/// target span replaced by `candidate` in double square brackets.
/// Pre-existing double brackets are escaped.
std::string render_attack_context(const AnnotatedDocument& doc, std::span<const SpanDraft> drafts,
                                  std::size_t target, std::string_view candidate);

std::vector<ChatMessage> build_attack_prompt(std::string_view context, std::string_view candidate,
                                             const AttackPrompt& prompt = AttackPrompt::standard());

/// Up to p guesses from hyphen lines; a short or empty reply is accepted.
GuessSet parse_guesses(std::string_view reply, std::size_t p, std::size_t candidate_index = 0);

}  // namespace intact

#endif  // INTACT_ATTACK_HPP_
