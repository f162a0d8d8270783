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

#ifndef INTACT_TESTS_DATE_ORACLE_HPP_
#define INTACT_TESTS_DATE_ORACLE_HPP_

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace intact::testing {

// Decodes a generalized date phrase into the months it covers, written
// independently of the library so the ladder can be checked against it.
// Months are numbered year * 12 + (month - 1).
using Interval = std::pair<long, long>;

inline std::optional<long> ordinal_number(const std::string& word) {
  if (word.size() < 3) return std::nullopt;
  const std::string digits = word.substr(0, word.size() - 2);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return std::nullopt;
  return std::stol(digits);
}

inline std::optional<std::vector<Interval>> decode_date_phrase(const std::string& phrase) {
  static const std::array<std::string, 12> months = {
      "January", "February", "March",     "April",   "May",      "June",
      "July",    "August",   "September", "October", "November", "December"};
  std::istringstream in(phrase);
  std::vector<std::string> w;
  for (std::string t; in >> t;) w.push_back(t);
  auto year_span = [](long a, long b) { return std::vector<Interval>{{a * 12, b * 12 + 11}}; };
  auto third = [](const std::string& part, long base, long unit) -> std::optional<Interval> {
    // base + [0..2], [3..6], [7..9] units
    if (part == "early") return Interval{base, base + 3 * unit - 1};
    if (part == "mid") return Interval{base + 3 * unit, base + 7 * unit - 1};
    if (part == "late") return Interval{base + 7 * unit, base + 10 * unit - 1};
    return std::nullopt;
  };

  if (w.size() == 1) return year_span(std::stol(w[0]), std::stol(w[0]));
  if (w.size() == 2) {
    const long y = std::stol(w[1]);
    for (long m = 0; m < 12; ++m) {
      if (w[0] == months[m]) return std::vector<Interval>{{y * 12 + m, y * 12 + m}};
    }
    if (w[0] == "spring") return std::vector<Interval>{{y * 12 + 2, y * 12 + 4}};
    if (w[0] == "summer") return std::vector<Interval>{{y * 12 + 5, y * 12 + 7}};
    if (w[0] == "autumn") return std::vector<Interval>{{y * 12 + 8, y * 12 + 10}};
    if (w[0] == "winter") return std::vector<Interval>{{y * 12, y * 12 + 1}, {y * 12 + 11, y * 12 + 11}};
    return std::nullopt;
  }
  if (w.size() == 5 && w[0] == "the" && w[2] == "half" && w[3] == "of") {
    const long y = std::stol(w[4]);
    if (w[1] == "first") return std::vector<Interval>{{y * 12, y * 12 + 5}};
    if (w[1] == "second") return std::vector<Interval>{{y * 12 + 6, y * 12 + 11}};
    return std::nullopt;
  }
  if (w.size() == 3 && w[0] == "the" && w[2].back() == 's') {
    const long decade = std::stol(w[2].substr(0, w[2].size() - 1));
    // decade parts: 0-3, 4-6, 7-9
    if (w[1] == "early") return year_span(decade, decade + 3);
    if (w[1] == "mid") return year_span(decade + 4, decade + 6);
    if (w[1] == "late") return year_span(decade + 7, decade + 9);
    return std::nullopt;
  }
  if (w.size() == 3 && w[0] == "the") {
    const auto n = ordinal_number(w[1]);
    if (!n) return std::nullopt;
    if (w[2] == "century") return year_span((*n - 1) * 100, (*n - 1) * 100 + 99);
    if (w[2] == "millennium") return year_span((*n - 1) * 1000, (*n - 1) * 1000 + 999);
    return std::nullopt;
  }
  if (w.size() == 4 && w[0] == "the") {
    const auto n = ordinal_number(w[2]);
    if (!n) return std::nullopt;
    std::optional<Interval> years;
    if (w[3] == "century") years = third(w[1], (*n - 1) * 100, 10);
    if (w[3] == "millennium") years = third(w[1], (*n - 1) * 1000, 100);
    if (!years) return std::nullopt;
    return year_span(years->first, years->second);
  }
  return std::nullopt;
}

/// Every month of `inner` lies in some interval of `outer`.
inline bool covers(const std::vector<Interval>& outer, const std::vector<Interval>& inner) {
  for (const auto& [a, b] : inner) {
    const bool inside = std::any_of(outer.begin(), outer.end(), [&](const Interval& o) {
      return o.first <= a && b <= o.second;
    });
    if (!inside) return false;
  }
  return true;
}

}  // namespace intact::testing

#endif  // INTACT_TESTS_DATE_ORACLE_HPP_
