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

#include "intact/date_generalizer.hpp"

#include <array>
#include <charconv>

#include "intact/text_analysis.hpp"
#include "intact/utf8.hpp"

namespace intact {

namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

constexpr int kMinYear = 1000;
constexpr int kMaxYear = 2999;

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : kDays[m - 1];
}

int month_from_name(std::string_view word) {
  const std::string w = utf8::to_lower(word);
  for (int i = 0; i < 12; ++i) {
    const std::string full = utf8::to_lower(kMonthNames[i]);
    if (w == full) return i + 1;
    if (w.size() >= 3 && w.size() < full.size() && full.compare(0, w.size(), w) == 0 &&
        (w.size() == 3 || w == "sept")) {
      return i + 1;
    }
  }
  return 0;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

bool all_digits(std::string_view s, std::size_t min_len, std::size_t max_len) {
  if (s.size() < min_len || s.size() > max_len) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// "12", "12th", "1st", "3rd", "2nd"
std::optional<int> day_token(std::string_view s) {
  std::size_t digits = 0;
  while (digits < s.size() && s[digits] >= '0' && s[digits] <= '9') ++digits;
  if (digits == 0 || digits > 2) return std::nullopt;
  std::string_view suffix = s.substr(digits);
  if (!suffix.empty() && suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") {
    return std::nullopt;
  }
  return to_int(s.substr(0, digits));
}

std::optional<ParsedDate> make(int year, int month, int day) {
  if (year < kMinYear || year > kMaxYear) return std::nullopt;
  ParsedDate d;
  d.year = year;
  d.specificity = DateSpecificity::kYear;
  if (month != 0) {
    if (month < 1 || month > 12) return std::nullopt;
    d.month = month;
    d.specificity = DateSpecificity::kMonth;
  }
  if (day != 0) {
    if (month == 0 || day < 1 || day > days_in_month(year, month)) return std::nullopt;
    d.day = day;
    d.specificity = DateSpecificity::kDay;
  }
  return d;
}

std::optional<ParsedDate> parse_numeric(std::string_view s) {
  // YYYY-MM-DD
  if (s.size() == 10 && s[4] == '-' && s[7] == '-' && all_digits(s.substr(0, 4), 4, 4) &&
      all_digits(s.substr(5, 2), 2, 2) && all_digits(s.substr(8, 2), 2, 2)) {
    return make(*to_int(s.substr(0, 4)), *to_int(s.substr(5, 2)), *to_int(s.substr(8, 2)));
  }
  // DD/MM/YYYY
  const auto a = s.find('/');
  const auto b = a == std::string_view::npos ? a : s.find('/', a + 1);
  if (a != std::string_view::npos && b != std::string_view::npos && s.find('/', b + 1) == std::string_view::npos) {
    auto dd = s.substr(0, a), mm = s.substr(a + 1, b - a - 1), yy = s.substr(b + 1);
    if (all_digits(dd, 1, 2) && all_digits(mm, 1, 2) && all_digits(yy, 4, 4)) {
      return make(*to_int(yy), *to_int(mm), *to_int(dd));
    }
  }
  if (all_digits(s, 4, 4)) return make(*to_int(s), 0, 0);
  return std::nullopt;
}

std::string ordinal(long n) {
  const long mod100 = n % 100;
  std::string_view suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(n) + std::string(suffix);
}

// Splits a decade/century/millennium into early/mid/late thirds on the
// boundaries of the next finer unit: digits 0-2 early, 3-6 mid, 7-9 late.
std::string_view part_of(long digit) { return digit <= 2 ? "early" : digit <= 6 ? "mid" : "late"; }
std::pair<long, long> part_bounds(long digit) {
  return digit <= 2 ? std::pair{0L, 2L} : digit <= 6 ? std::pair{3L, 6L} : std::pair{7L, 9L};
}
// Decades use 0-3 / 4-6 / 7-9 on the year digit.
std::string_view decade_part_of(long digit) { return digit <= 3 ? "early" : digit <= 6 ? "mid" : "late"; }
std::pair<long, long> decade_part_bounds(long digit) {
  return digit <= 3 ? std::pair{0L, 3L} : digit <= 6 ? std::pair{4L, 6L} : std::pair{7L, 9L};
}

MonthInterval years(long first_year, long last_year) {
  return {first_year * 12, last_year * 12 + 11};
}

DateRung rung_for(DateLevel level, const ParsedDate& d) {
  const long y = d.year;
  const long month_index = y * 12 + (d.month - 1);
  switch (level) {
    case DateLevel::kMonth:
      return {level, std::string(kMonthNames[d.month - 1]) + " " + std::to_string(y),
              {{month_index, month_index}}};
    case DateLevel::kSeason: {
      // Meteorological seasons, taken within the calendar year.
      const int m = d.month;
      if (m >= 3 && m <= 5) return {level, "spring " + std::to_string(y), {{y * 12 + 2, y * 12 + 4}}};
      if (m >= 6 && m <= 8) return {level, "summer " + std::to_string(y), {{y * 12 + 5, y * 12 + 7}}};
      if (m >= 9 && m <= 11) return {level, "autumn " + std::to_string(y), {{y * 12 + 8, y * 12 + 10}}};
      return {level, "winter " + std::to_string(y), {{y * 12, y * 12 + 1}, {y * 12 + 11, y * 12 + 11}}};
    }
    case DateLevel::kHalf: {
      const int m = d.month;
      if (m >= 3 && m <= 5) return {level, "the first half of " + std::to_string(y), {{y * 12, y * 12 + 5}}};
      if (m >= 9 && m <= 11) {
        return {level, "the second half of " + std::to_string(y), {{y * 12 + 6, y * 12 + 11}}};
      }
      // Summer and winter straddle the mid-year boundary.
      return {level, std::to_string(y), {years(y, y)}};
    }
    case DateLevel::kDecadePart: {
      const long decade = y / 10 * 10;
      const auto [lo, hi] = decade_part_bounds(y % 10);
      return {level, "the " + std::string(decade_part_of(y % 10)) + " " + std::to_string(decade) + "s",
              {years(decade + lo, decade + hi)}};
    }
    case DateLevel::kCenturyPart: {
      const long century = y / 100;
      const auto [lo, hi] = part_bounds((y / 10) % 10);
      return {level,
              "the " + std::string(part_of((y / 10) % 10)) + " " + ordinal(century + 1) + " century",
              {years(century * 100 + lo * 10, century * 100 + hi * 10 + 9)}};
    }
    case DateLevel::kCentury: {
      const long century = y / 100;
      return {level, "the " + ordinal(century + 1) + " century", {years(century * 100, century * 100 + 99)}};
    }
    case DateLevel::kMillenniumPart: {
      const long millennium = y / 1000;
      const auto [lo, hi] = part_bounds((y / 100) % 10);
      return {level,
              "the " + std::string(part_of((y / 100) % 10)) + " " + ordinal(millennium + 1) + " millennium",
              {years(millennium * 1000 + lo * 100, millennium * 1000 + hi * 100 + 99)}};
    }
    case DateLevel::kMillennium: {
      const long millennium = y / 1000;
      return {level, "the " + ordinal(millennium + 1) + " millennium",
              {years(millennium * 1000, millennium * 1000 + 999)}};
    }
  }
  return {level, "", {}};
}

}  // namespace

std::optional<ParsedDate> parse_date(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (utf8::is_space(static_cast<unsigned char>(s.back())) || s.back() == '.')) s.pop_back();
  std::size_t lead = 0;
  while (lead < s.size() && utf8::is_space(static_cast<unsigned char>(s[lead]))) ++lead;
  s.erase(0, lead);
  if (s.empty()) return std::nullopt;
  if (auto numeric = parse_numeric(s)) return numeric;

  // Word forms: split on spaces and commas, drop leading "on"/"in"/"the"
  // and a connecting "of".
  std::vector<std::string> words;
  std::string current;
  for (char c : s) {
    if (c == ' ' || c == ',' || c == '\t') {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else if (c != '.') {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  while (!words.empty()) {
    const std::string w = utf8::to_lower(words.front());
    if (w == "on" || w == "in" || w == "the") {
      words.erase(words.begin());
    } else {
      break;
    }
  }
  std::erase_if(words, [](const std::string& w) { return utf8::to_lower(w) == "of"; });

  if (words.size() == 3) {
    // D Month YYYY
    if (auto day = day_token(words[0]); day && month_from_name(words[1]) && all_digits(words[2], 4, 4)) {
      return make(*to_int(words[2]), month_from_name(words[1]), *day);
    }
    // Month D YYYY
    if (auto day = day_token(words[1]); day && month_from_name(words[0]) && all_digits(words[2], 4, 4)) {
      return make(*to_int(words[2]), month_from_name(words[0]), *day);
    }
  }
  if (words.size() == 2 && month_from_name(words[0]) && all_digits(words[1], 4, 4)) {
    return make(*to_int(words[1]), month_from_name(words[0]), 0);
  }
  if (words.size() == 1 && all_digits(words[0], 4, 4)) return make(*to_int(words[0]), 0, 0);
  return std::nullopt;
}

std::vector<DateRung> date_ladder(const ParsedDate& date, std::size_t count) {
  static constexpr std::array<DateLevel, 8> kLevels = {
      DateLevel::kMonth,       DateLevel::kSeason,  DateLevel::kHalf,
      DateLevel::kDecadePart,  DateLevel::kCenturyPart, DateLevel::kCentury,
      DateLevel::kMillenniumPart, DateLevel::kMillennium};
  std::size_t start = 0;
  switch (date.specificity) {
    case DateSpecificity::kDay: start = 0; break;
    case DateSpecificity::kMonth: start = 1; break;
    case DateSpecificity::kYear: start = 3; break;
  }
  std::vector<DateRung> out;
  for (std::size_t i = start; i < kLevels.size() && out.size() < count; ++i) {
    out.push_back(rung_for(kLevels[i], date));
  }
  return out;
}

std::optional<CandidateList> generalize_date(std::string_view surface, std::size_t m) {
  auto date = parse_date(surface);
  if (!date) return std::nullopt;
  auto ladder = date_ladder(*date, m);
  if (ladder.size() < m) return std::nullopt;
  CandidateList list;
  list.source = CandidateSource::kDateRule;
  for (auto& rung : ladder) list.candidates.push_back(std::move(rung.text));
  return list;
}

}  // namespace intact
