#include "volstudy/dates.hpp"

#include <cstdio>

#include "volstudy/errors.hpp"

namespace volstudy {

namespace {

std::chrono::year_month_day to_ymd(std::chrono::sys_days d) {
  return std::chrono::year_month_day(d);
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
  const std::chrono::year_month_day ymd{std::chrono::year(year),
                                        std::chrono::month(month),
                                        std::chrono::day(day)};
  if (!ymd.ok()) {
    throw Error(Err::MalformedInput,
                "invalid calendar date " + std::to_string(year) + "-" +
                    std::to_string(month) + "-" + std::to_string(day));
  }
  days_ = std::chrono::sys_days(ymd);
}

Date Date::parse(std::string_view iso) {
  auto parsed = try_parse(iso);
  if (!parsed) {
    throw Error(Err::MalformedInput,
                "expected ISO date YYYY-MM-DD, got '" + std::string(iso) + "'");
  }
  return *parsed;
}

std::optional<Date> Date::try_parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  for (int i : {0, 1, 2, 3}) {
    if (iso[i] < '0' || iso[i] > '9') return std::nullopt;
    y = y * 10 + (iso[i] - '0');
  }
  for (int i : {5, 6}) {
    if (iso[i] < '0' || iso[i] > '9') return std::nullopt;
    m = m * 10 + static_cast<unsigned>(iso[i] - '0');
  }
  for (int i : {8, 9}) {
    if (iso[i] < '0' || iso[i] > '9') return std::nullopt;
    d = d * 10 + static_cast<unsigned>(iso[i] - '0');
  }
  const std::chrono::year_month_day ymd{std::chrono::year(y),
                                        std::chrono::month(m),
                                        std::chrono::day(d)};
  if (!ymd.ok()) return std::nullopt;
  return Date(std::chrono::sys_days(ymd));
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

int Date::year() const { return static_cast<int>(to_ymd(days_).year()); }
unsigned Date::month() const { return static_cast<unsigned>(to_ymd(days_).month()); }
unsigned Date::day() const { return static_cast<unsigned>(to_ymd(days_).day()); }

bool Date::is_weekend() const {
  const std::chrono::weekday wd(days_);
  return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

Date Date::next_day() const { return Date(days_ + std::chrono::days(1)); }

Date Date::plus_days(int n) const { return Date(days_ + std::chrono::days(n)); }

}  // namespace volstudy
