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

#include "intact/attack.hpp"

#include "intact/errors.hpp"
#include "intact/generation.hpp"
#include "intact/resources.hpp"

namespace intact {

namespace {

std::string_view require(std::string_view name) {
  auto r = resources::find(name);
  if (!r) throw Error("missing embedded resource '" + std::string(name) + "'");
  return *r;
}

// Appends escaped text, also breaking a bracket pair formed across the
// junction with what is already written.
void append_escaped(std::string& out, std::string_view piece) {
  std::string escaped = escape_brackets(piece);
  if (!out.empty() && !escaped.empty() && (out.back() == '[' || out.back() == ']') &&
      escaped.front() == out.back()) {
    out.push_back(' ');
  }
  out += escaped;
}

}  // namespace

const AttackPrompt& AttackPrompt::standard() {
  static const AttackPrompt prompt{std::string(require("prompts/attack_user_example.txt")),
                                   std::string(require("prompts/attack_assistant_example.txt")),
                                   std::string(require("prompts/attack_user_target.txt"))};
  return prompt;
}

std::string render_attack_context(const AnnotatedDocument& doc, std::span<const SpanDraft> drafts,
                                  std::size_t target, std::string_view candidate) {
  const auto& spans = doc.spans();
  if (drafts.size() != spans.size() || target >= spans.size()) {
    throw MissingRecordError("document '" + doc.doc_id() + "': attack context needs one draft per span");
  }
  const std::string& text = doc.text();
  std::string out;
  out.reserve(text.size() + 64);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    append_escaped(out, std::string_view(text).substr(cursor, spans[i].byte_begin - cursor));
    cursor = spans[i].byte_end;
    if (i == target) {
      if (!out.empty() && out.back() == '[') out.push_back(' ');
      out += "[[";
      out += pad_for_brackets(escape_brackets(candidate));
      out += "]]";
    } else {
      append_escaped(out, drafts[i].shown());
    }
  }
  append_escaped(out, std::string_view(text).substr(cursor));
  return out;
}

std::vector<ChatMessage> build_attack_prompt(std::string_view context, std::string_view candidate,
                                             const AttackPrompt& prompt) {
  return {
      {Role::kUser, prompt.example_turn},
      {Role::kAssistant, prompt.example_answer},
      {Role::kUser, fill_template(prompt.target_turn, {{"text", std::string(context)},
                                                       {"target", pad_for_brackets(escape_brackets(candidate))}})},
  };
}

GuessSet parse_guesses(std::string_view reply, std::size_t p, std::size_t candidate_index) {
  return {candidate_index, parse_hyphen_list(reply, p)};
}

}  // namespace intact
