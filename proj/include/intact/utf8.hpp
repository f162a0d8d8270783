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

#ifndef INTACT_UTF8_HPP_
#define INTACT_UTF8_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace intact::utf8 {

/// Decodes the scalar value starting at `pos` and advances `pos` past it.
/// Invalid sequences decode as U+FFFD and consume a single byte.
char32_t decode(std::string_view text, std::size_t& pos);

void append(std::string& out, char32_t cp);

/// Byte offset of every scalar value boundary: result[i] is the byte
/// offset of scalar i, and result.back() == text.size().
std::vector<std::size_t> boundaries(std::string_view text);

std::size_t length(std::string_view text);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);
bool is_upper(char32_t cp);
char32_t to_lower(char32_t cp);

std::string to_lower(std::string_view text);

}  // namespace intact::utf8

#endif  // INTACT_UTF8_HPP_
