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

#include "intact/generation.hpp"

#include <array>

#include "intact/resources.hpp"
#include "intact/utf8.hpp"

namespace intact {

namespace {

std::string_view require(std::string_view name) {
  auto r = resources::find(name);
  if (!r) throw Error("missing embedded resource '" + std::string(name) + "'");
  return *r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && utf8::is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && utf8::is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }
bool ends_with(std::string_view s, std::string_view p) {
  return s.size() >= p.size() && s.substr(s.size() - p.size()) == p;
}

std::string_view strip_quotes(std::string_view s) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kPairs = {{
      {"\"", "\""}, {"'", "'"}, {"\xE2\x80\x9C", "\xE2\x80\x9D"}, {"\xE2\x80\x98", "\xE2\x80\x99"}}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [open, close] : kPairs) {
      if (s.size() >= open.size() + close.size() && starts_with(s, open) && ends_with(s, close)) {
        s = trim(s.substr(open.size(), s.size() - open.size() - close.size()));
        changed = true;
      }
    }
  }
  return s;
}

}  // namespace

const PromptBundle& PromptBundle::standard() {
  static const PromptBundle bundle = [] {
    PromptBundle b;
    b.example_turn = std::string(require("prompts/generation_user_example.txt"));
    b.target_turn = std::string(require("prompts/generation_user_target.txt"));
    b.examples = parse_examples(require("prompts/generation_examples.txt"));
    return b;
  }();
  return bundle;
}

std::map<EntityLabel, OneShotExample> PromptBundle::parse_examples(std::string_view text) {
  std::map<EntityLabel, OneShotExample> out;
  std::optional<EntityLabel> current;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[' && line.back() == ']' && !starts_with(line, "[[")) {
      const auto label = parse_label(line.substr(1, line.size() - 2));
      if (!label) throw Error("unknown label in example file: " + std::string(line));
      current = label;
      out[*label] = {};
      continue;
    }
    if (!current) throw Error("example line outside a [LABEL] block: " + std::string(line));
    OneShotExample& ex = out[*current];
    if (line.front() == '-') {
      ex.replacements.emplace_back(trim(line.substr(1)));
    } else {
      ex.sentence = std::string(line);
      const auto open = line.find("[[");
      const auto close = line.find("]]", open);
      if (open == std::string_view::npos || close == std::string_view::npos) {
        throw Error("example sentence lacks a [[target]]: " + std::string(line));
      }
      ex.target = std::string(line.substr(open + 2, close - open - 2));
    }
  }
  return out;
}

std::string escape_brackets(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if ((c == '[' || c == ']') && !out.empty() && out.back() == c) out.push_back(' ');
    out.push_back(c);
  }
  return out;
}

std::string pad_for_brackets(std::string inner) {
  if (!inner.empty() && inner.front() == '[') inner.insert(inner.begin(), ' ');
  if (!inner.empty() && inner.back() == ']') inner.push_back(' ');
  return inner;
}

std::string bracket_target(std::string_view sentence, ByteRange target) {
  std::string out = escape_brackets(sentence.substr(0, target.begin));
  if (!out.empty() && out.back() == '[') out.push_back(' ');
  out += "[[";
  out += pad_for_brackets(escape_brackets(sentence.substr(target.begin, target.end - target.begin)));
  out += "]]";
  const std::string tail = escape_brackets(sentence.substr(target.end));
  if (!tail.empty() && tail.front() == ']') out.push_back(' ');
  out += tail;
  return out;
}

std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find('{', pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = tmpl.find('}', open);
    if (close == std::string_view::npos) break;
    out.append(tmpl.substr(pos, open - pos));
    auto it = values.find(std::string(tmpl.substr(open + 1, close - open - 1)));
    if (it != values.end()) {
      out += it->second;
    } else {
      out.append(tmpl.substr(open, close - open + 1));
    }
    pos = close + 1;
  }
  out.append(tmpl.substr(pos));
  return out;
}

std::vector<ChatMessage> build_generation_prompt(const PiiSpan& span, const SentenceContext& ctx,
                                                 const PromptBundle& bundle) {
  if (is_direct_identifier(span.label)) {
    throw UnsupportedLabelError("label " + std::string(to_string(span.label)) +
                                " is replaced by rule, not by the model");
  }
  auto it = bundle.examples.find(span.label);
  if (it == bundle.examples.end()) {
    throw UnsupportedLabelError("no one-shot example for label " + std::string(to_string(span.label)));
  }
  const OneShotExample& ex = it->second;
  return {
      {Role::kUser, fill_template(bundle.example_turn, {{"sentence", ex.sentence}, {"target", ex.target}})},
      {Role::kAssistant, render_list(ex.replacements)},
      {Role::kUser, fill_template(bundle.target_turn,
                                  {{"sentence", bracket_target(ctx.sentence, ctx.span_in_sentence)},
                                   {"target", pad_for_brackets(escape_brackets(span.surface))}})},
  };
}

std::string render_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += '\n';
    out += "- ";
    out += items[i];
  }
  return out;
}

std::vector<std::string> parse_hyphen_list(std::string_view reply, std::size_t limit) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= reply.size() && out.size() < limit) {
    std::size_t eol = reply.find('\n', pos);
    if (eol == std::string_view::npos) eol = reply.size();
    std::string_view line = trim(reply.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() != '-') continue;
    line = trim(line.substr(1));
    if (!line.empty() && line.back() == ',') line = trim(line.substr(0, line.size() - 1));
    line = strip_quotes(line);
    if (line.empty()) continue;
    out.emplace_back(line);
  }
  return out;
}

std::vector<std::string> parse_candidates(std::string_view reply, std::size_t m) {
  auto items = parse_hyphen_list(reply, m);
  if (items.size() < m) {
    throw MalformedReplyError("expected " + std::to_string(m) + " hyphenated candidates, found " +
                              std::to_string(items.size()));
  }
  return items;
}

std::string LabelCounters::assign(EntityLabel label, const std::string& entity_id) {
  auto key = std::make_pair(label, entity_id);
  if (auto it = assigned_.find(key); it != assigned_.end()) return it->second;
  const std::size_t k = ++next_[label];
  std::string name = std::string(to_string(label)) + "_" + std::to_string(k);
  assigned_.emplace(std::move(key), name);
  return name;
}

std::optional<std::string> LabelCounters::find(EntityLabel label, const std::string& entity_id) const {
  auto it = assigned_.find({label, entity_id});
  if (it == assigned_.end()) return std::nullopt;
  return it->second;
}

CandidateList generalize_direct_identifier(const PiiSpan& span, LabelCounters& counters) {
  CandidateList list;
  list.source = CandidateSource::kDirectIdRule;
  list.candidates.push_back(counters.assign(span.label, span.entity_id));
  return list;
}

}  // namespace intact
