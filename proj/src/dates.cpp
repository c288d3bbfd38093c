#include "vadecon/dates.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "vadecon/errors.hpp"

namespace vadecon {

namespace {

// Floor division so negative indices (years before 0) stay consistent.
int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int parse_int_field(std::string_view s, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("invalid " + std::string(what) + " field: '" +
                          std::string(s) + "'");
  }
  return value;
}

}  // namespace

YearMonth YearMonth::from_index(int idx) {
  int year = floor_div(idx, 12);
  return {year, idx - year * 12 + 1};
}

YearQuarter YearQuarter::from_index(int idx) {
  int year = floor_div(idx, 4);
  return {year, idx - year * 4 + 1};
}

std::string format_month(YearMonth ym) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
  return buf;
}

std::string format_quarter(YearQuarter yq) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-Q%d", yq.year, yq.quarter);
  return buf;
}

std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

bool is_valid_date(int year, int month, int day) {
  if (month < 1 || month > 12 || day < 1) return false;
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  int max_day = kDays[static_cast<std::size_t>(month - 1)];
  bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  if (month == 2 && leap) max_day = 29;
  return day <= max_day;
}

YearMonth parse_month(std::string_view s) {
  if (s.size() != 7 || s[4] != '-') {
    throw ValidationError("expected YYYY-MM month, got '" + std::string(s) +
                          "'");
  }
  int year = parse_int_field(s.substr(0, 4), "year");
  int month = parse_int_field(s.substr(5, 2), "month");
  if (month < 1 || month > 12) {
    throw ValidationError("month out of range in '" + std::string(s) + "'");
  }
  return {year, month};
}

Date parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
    throw ValidationError("expected YYYY-MM-DD date, got '" + std::string(s) +
                          "'");
  }
  int year = parse_int_field(s.substr(0, 4), "year");
  int month = parse_int_field(s.substr(5, 2), "month");
  int day = parse_int_field(s.substr(8, 2), "day");
  if (!is_valid_date(year, month, day)) {
    throw ValidationError("invalid calendar date '" + std::string(s) + "'");
  }
  return {year, month, day};
}

}  // namespace vadecon
