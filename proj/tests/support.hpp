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

#ifndef INTACT_TESTS_SUPPORT_HPP_
#define INTACT_TESTS_SUPPORT_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "intact/document.hpp"
#include "intact/utf8.hpp"

namespace intact::testing {

struct Mark {
  std::string surface;
  std::string label;
  std::optional<std::string> entity_id = std::nullopt;
};

/// Builds a document by locating each surface left to right in `text`.
inline AnnotatedDocument annotate(const std::string& doc_id, const std::string& text,
                                  const std::vector<Mark>& marks,
                                  std::optional<std::string> individual = std::nullopt) {
  std::vector<SpanAnnotation> anns;
  std::size_t from = 0;
  for (const auto& m : marks) {
    const auto at = text.find(m.surface, from);
    if (at == std::string::npos) throw std::logic_error("surface not found: " + m.surface);
    const std::size_t start = utf8::length(std::string_view(text).substr(0, at));
    anns.push_back({start, start + utf8::length(m.surface), m.label, m.entity_id});
    from = at + m.surface.size();
  }
  return AnnotatedDocument::create(doc_id, text, std::move(anns), std::move(individual));
}

inline std::string hyphen_lines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& i : items) out += "- " + i + "\n";
  return out;
}

}  // namespace intact::testing

#endif  // INTACT_TESTS_SUPPORT_HPP_
