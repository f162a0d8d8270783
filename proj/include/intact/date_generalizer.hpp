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

#ifndef INTACT_DATE_GENERALIZER_HPP_
#define INTACT_DATE_GENERALIZER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intact/document.hpp"

namespace intact {

enum class DateSpecificity { kDay, kMonth, kYear };

struct ParsedDate {
  int year = 0;
  int month = 0;  // 1..12, 0 when absent
  int day = 0;    // 1..31, 0 when absent
  DateSpecificity specificity = DateSpecificity::kYear;
};

/// Parses `D Month YYYY`, `Month D, YYYY`, `Month YYYY`, `YYYY-MM-DD`,
/// `DD/MM/YYYY` and `YYYY` (years 1000-2999; ordinal day suffixes and
/// three-letter month names are accepted). Returns nullopt otherwise.
std::optional<ParsedDate> parse_date(std::string_view text);

enum class DateLevel {
  kMonth,
  kSeason,
  kHalf,
  kDecadePart,
  kCenturyPart,
  kCentury,
  kMillenniumPart,
  kMillennium
};

/// Inclusive range of absolute month indices (year * 12 + month - 1).
struct MonthInterval {
  long first = 0;
  long last = 0;
};

struct DateRung {
  DateLevel level;
  std::string text;
  std::vector<MonthInterval> denotes;  // disjoint, ascending
};

/// Generalizations of `date`, coarsest last, starting one level above the
/// date's own specificity. Each rung denotes a superset of the months the
/// previous rung denotes. At most `count` rungs are returned.
std::vector<DateRung> date_ladder(const ParsedDate& date, std::size_t count);

/// Rule-based candidate list for a DATETIME surface; nullopt when the
/// surface is not in a supported format (or the ladder is shorter than m)
/// and the span must go through the model instead.
std::optional<CandidateList> generalize_date(std::string_view surface, std::size_t m);

}  // namespace intact

#endif  // INTACT_DATE_GENERALIZER_HPP_
