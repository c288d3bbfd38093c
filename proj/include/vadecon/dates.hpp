#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace vadecon {

// Calendar month, the index unit of all emotion/indicator series.
struct YearMonth {
  int year = 0;
  int month = 1;  // 1..12

  // Months since year 0; consecutive months differ by exactly 1.
  int index() const { return year * 12 + (month - 1); }

  static YearMonth from_index(int idx);

  YearMonth next() const { return from_index(index() + 1); }
  int quarter() const { return (month - 1) / 3 + 1; }

  auto operator<=>(const YearMonth&) const = default;
};

// Calendar quarter for aggregated series.
struct YearQuarter {
  int year = 0;
  int quarter = 1;  // 1..4

  int index() const { return year * 4 + (quarter - 1); }
  static YearQuarter from_index(int idx);
  static YearQuarter of(YearMonth ym) { return {ym.year, ym.quarter()}; }

  auto operator<=>(const YearQuarter&) const = default;
};

// Day-precision date; statements are dated to the day even though the
// analysis grid is monthly.
struct Date {
  int year = 0;
  int month = 1;
  int day = 1;

  YearMonth year_month() const { return {year, month}; }

  auto operator<=>(const Date&) const = default;
};

// "YYYY-MM"
std::string format_month(YearMonth ym);
// "YYYY-Qn"
std::string format_quarter(YearQuarter yq);
// "YYYY-MM-DD"
std::string format_date(Date d);

// Throw ValidationError on malformed or out-of-range input.
YearMonth parse_month(std::string_view s);
Date parse_date(std::string_view s);

bool is_valid_date(int year, int month, int day);

}  // namespace vadecon
