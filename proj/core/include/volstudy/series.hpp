// Market data model: price series, log returns, calendar alignment, and the
// trading-day window arithmetic the study runs on.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volstudy/dates.hpp"

namespace volstudy {

struct PricePoint {
  Date date;
  double price = 0.0;  // positive adjusted close
};

// Log returns with their dates; returns[k] covers the close-to-close move
// ending on dates[k]. Dates are strictly increasing.
struct ReturnSeries {
  std::string ticker;
  std::vector<Date> dates;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

// A stock series and the market series restricted to their common calendar.
struct AlignedPanel {
  std::vector<Date> dates;
  std::vector<double> stock;
  std::vector<double> market;

  std::size_t size() const { return dates.size(); }
};

// Inclusive index range into a panel.
struct IndexRange {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t length() const { return last - first + 1; }
  bool operator==(const IndexRange&) const = default;
};

enum class WindowUnit { day, week, month };

// Trading-day length of one unit: a week is 5 trading days, a month 25.
constexpr int unit_trading_days(WindowUnit u) {
  switch (u) {
    case WindowUnit::day: return 1;
    case WindowUnit::week: return 5;
    case WindowUnit::month: return 25;
  }
  return 1;
}

struct WindowSide {
  int count = 0;  // >= 0
  WindowUnit unit = WindowUnit::day;

  int trading_days() const { return count * unit_trading_days(unit); }
};

// Announcement window (N_B units before, N_A units after the outcome day).
struct WindowSpec {
  WindowSide before;
  WindowSide after;

  int days_before() const { return before.trading_days(); }
  int days_after() const { return after.trading_days(); }
  std::size_t length() const {
    return static_cast<std::size_t>(days_before() + days_after()) + 1;
  }

  // Compact form "2w,2w" used in configs, flags, and file names.
  std::string compact() const;
  // Display form "(-2 weeks,2 weeks)" used in summary tables.
  std::string label() const;

  // Parses the compact form, e.g. "2d,2d", "1w,1w", "1m,2m".
  static WindowSpec parse(const std::string& text);
};

enum class OutcomeGroup { investor, state, settled };

const char* group_name(OutcomeGroup g);
std::optional<OutcomeGroup> group_from_name(const std::string& name);

struct EventCase {
  std::string case_id;
  std::string ticker;
  Date outcome_date;
  std::optional<Date> registration_date;
  OutcomeGroup group = OutcomeGroup::investor;
  std::optional<double> amount_claimed;
  std::optional<double> amount_awarded;
  // Extra named columns from the case file; a missing cell means no entry.
  std::map<std::string, double> covariates;
};

// Close-to-close log returns; needs >= 2 points, strictly increasing dates,
// positive prices.
ReturnSeries compute_log_returns(const std::string& ticker,
                                 std::span<const PricePoint> prices);

// Restricts both series to the intersection of their calendars. No values are
// imputed; days absent from either side are dropped.
AlignedPanel align(const ReturnSeries& stock, const ReturnSeries& market);

// Index of `date` in the panel calendar, snapping forward to the next trading
// day when the date itself is not traded.
std::size_t snap_to_trading_day(const AlignedPanel& panel, Date date);

// Announcement window [t_O - N_B, t_O + N_A] as panel indices.
IndexRange resolve_window(const AlignedPanel& panel, Date outcome_date,
                          const WindowSpec& spec);

// The `length` trading days ending the day before the window opens.
IndexRange estimation_range(const AlignedPanel& panel, Date outcome_date,
                            const WindowSpec& spec, std::size_t length = 500);

}  // namespace volstudy
