// Calendar dates at day resolution, backed by std::chrono's civil calendar.
#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace volstudy {

class Date {
 public:
  Date() = default;
  Date(int year, unsigned month, unsigned day);

  // Parses "YYYY-MM-DD"; throws Error(MalformedInput) on anything else.
  static Date parse(std::string_view iso);
  static std::optional<Date> try_parse(std::string_view iso);

  std::string to_string() const;  // "YYYY-MM-DD"

  int year() const;
  unsigned month() const;
  unsigned day() const;

  // Days since the civil epoch; used only for ordering and arithmetic.
  int serial() const { return static_cast<int>(days_.time_since_epoch().count()); }

  bool is_weekend() const;
  Date next_day() const;
  Date plus_days(int n) const;

  auto operator<=>(const Date&) const = default;

 private:
  explicit Date(std::chrono::sys_days d) : days_(d) {}
  std::chrono::sys_days days_{};
};

}  // namespace volstudy
