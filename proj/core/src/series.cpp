#include "volstudy/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "volstudy/errors.hpp"

namespace volstudy {

namespace {

const char* unit_name(WindowUnit u) {
  switch (u) {
    case WindowUnit::day: return "day";
    case WindowUnit::week: return "week";
    case WindowUnit::month: return "month";
  }
  return "day";
}

char unit_letter(WindowUnit u) {
  switch (u) {
    case WindowUnit::day: return 'd';
    case WindowUnit::week: return 'w';
    case WindowUnit::month: return 'm';
  }
  return 'd';
}

WindowSide parse_side(const std::string& text) {
  if (text.size() < 2) {
    throw Error(Err::InvalidWindowSpec, "bad window side '" + text + "'");
  }
  WindowUnit unit;
  switch (text.back()) {
    case 'd': unit = WindowUnit::day; break;
    case 'w': unit = WindowUnit::week; break;
    case 'm': unit = WindowUnit::month; break;
    default:
      throw Error(Err::InvalidWindowSpec,
                  "bad window unit in '" + text + "' (use d, w or m)");
  }
  int count = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw Error(Err::InvalidWindowSpec, "bad window count in '" + text + "'");
    }
    count = count * 10 + (text[i] - '0');
  }
  return WindowSide{count, unit};
}

std::string side_label(const WindowSide& s) {
  std::string out = std::to_string(s.count) + " " + unit_name(s.unit);
  if (s.count != 1) out += "s";
  return out;
}

}  // namespace

std::string WindowSpec::compact() const {
  std::string out = std::to_string(before.count);
  out += unit_letter(before.unit);
  out += ',';
  out += std::to_string(after.count);
  out += unit_letter(after.unit);
  return out;
}

std::string WindowSpec::label() const {
  return "(-" + side_label(before) + "," + side_label(after) + ")";
}

WindowSpec WindowSpec::parse(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw Error(Err::InvalidWindowSpec,
                "window '" + text + "' must look like '2w,2w'");
  }
  WindowSpec spec{parse_side(text.substr(0, comma)),
                  parse_side(text.substr(comma + 1))};
  if (spec.before.count < 0 || spec.after.count < 0) {
    throw Error(Err::InvalidWindowSpec, "window counts must be >= 0");
  }
  return spec;
}

const char* group_name(OutcomeGroup g) {
  switch (g) {
    case OutcomeGroup::investor: return "investor";
    case OutcomeGroup::state: return "state";
    case OutcomeGroup::settled: return "settled";
  }
  return "investor";
}

std::optional<OutcomeGroup> group_from_name(const std::string& name) {
  if (name == "investor") return OutcomeGroup::investor;
  if (name == "state") return OutcomeGroup::state;
  if (name == "settled") return OutcomeGroup::settled;
  return std::nullopt;
}

ReturnSeries compute_log_returns(const std::string& ticker,
                                 std::span<const PricePoint> prices) {
  if (prices.size() < 2) {
    throw Error(Err::TooShortSeries,
                ticker + ": need at least 2 prices, got " +
                    std::to_string(prices.size()));
  }
  ReturnSeries out;
  out.ticker = ticker;
  out.dates.reserve(prices.size() - 1);
  out.values.reserve(prices.size() - 1);
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (!(prices[i].price > 0.0)) {
      throw Error(Err::NonPositivePrice,
                  ticker + " at " + prices[i].date.to_string());
    }
    if (i > 0) {
      if (!(prices[i - 1].date < prices[i].date)) {
        throw Error(Err::MalformedInput,
                    ticker + ": dates not strictly increasing near " +
                        prices[i].date.to_string());
      }
      out.dates.push_back(prices[i].date);
      out.values.push_back(std::log(prices[i].price / prices[i - 1].price));
    }
  }
  return out;
}

AlignedPanel align(const ReturnSeries& stock, const ReturnSeries& market) {
  AlignedPanel panel;
  std::size_t i = 0, j = 0;
  while (i < stock.size() && j < market.size()) {
    if (stock.dates[i] < market.dates[j]) {
      ++i;
    } else if (market.dates[j] < stock.dates[i]) {
      ++j;
    } else {
      panel.dates.push_back(stock.dates[i]);
      panel.stock.push_back(stock.values[i]);
      panel.market.push_back(market.values[j]);
      ++i;
      ++j;
    }
  }
  if (panel.dates.empty()) {
    throw Error(Err::EmptyIntersection,
                stock.ticker + " and " + market.ticker +
                    " share no trading days");
  }
  return panel;
}

std::size_t snap_to_trading_day(const AlignedPanel& panel, Date date) {
  const auto it = std::lower_bound(panel.dates.begin(), panel.dates.end(), date);
  if (it == panel.dates.end()) {
    throw Error(Err::OutcomeDateBeyondData,
                date.to_string() + " is past the last trading day " +
                    panel.dates.back().to_string());
  }
  return static_cast<std::size_t>(it - panel.dates.begin());
}

IndexRange resolve_window(const AlignedPanel& panel, Date outcome_date,
                          const WindowSpec& spec) {
  const std::size_t center = snap_to_trading_day(panel, outcome_date);
  const int nb = spec.days_before();
  const int na = spec.days_after();
  if (static_cast<std::size_t>(nb) > center ||
      center + static_cast<std::size_t>(na) >= panel.size()) {
    throw Error(Err::WindowOutOfRange,
                spec.label() + " around " + outcome_date.to_string() +
                    " does not fit in the panel");
  }
  return IndexRange{center - static_cast<std::size_t>(nb),
                    center + static_cast<std::size_t>(na)};
}

IndexRange estimation_range(const AlignedPanel& panel, Date outcome_date,
                            const WindowSpec& spec, std::size_t length) {
  if (length < 2) {
    throw Error(Err::InvalidConfig, "estimation length must be >= 2");
  }
  const IndexRange window = resolve_window(panel, outcome_date, spec);
  if (window.first < length) {
    throw Error(Err::InsufficientHistory,
                "need " + std::to_string(length) +
                    " trading days before the window, have " +
                    std::to_string(window.first));
  }
  return IndexRange{window.first - length, window.first - 1};
}

}  // namespace volstudy
