#include "volstudy/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "volstudy/errors.hpp"

namespace volstudy {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Err::IoFailure, "cannot open " + path.string());
  }
  return in;
}

std::ofstream create_or_throw(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Err::IoFailure, "cannot create " + path.string());
  }
  return out;
}

[[noreturn]] void bad_row(const std::filesystem::path& path, std::size_t row,
                          const std::string& what) {
  throw Error(Err::MalformedInput,
              path.string() + " row " + std::to_string(row) + ": " + what);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(Err::MalformedInput, where + ": bad number '" + text + "'");
  }
  return v;
}

std::map<std::string, std::vector<PricePoint>> load_price_csv(
    const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Err::MalformedInput, path.string() + ": empty file");
  }
  const auto header = split_row(line);
  if (header != std::vector<std::string>{"date", "ticker", "adj_close"}) {
    bad_row(path, 1, "expected header 'date,ticker,adj_close'");
  }
  std::map<std::string, std::vector<PricePoint>> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != 3) {
      bad_row(path, row, "expected 3 cells, got " + std::to_string(cells.size()));
    }
    const auto date = Date::try_parse(cells[0]);
    if (!date) bad_row(path, row, "bad date '" + cells[0] + "'");
    if (cells[1].empty()) bad_row(path, row, "empty ticker");
    const double price = parse_double(
        cells[2], path.string() + " row " + std::to_string(row));
    if (!(price > 0.0)) {
      throw Error(Err::NonPositivePrice,
                  path.string() + " row " + std::to_string(row) + ": " +
                      cells[1] + " at " + cells[0]);
    }
    out[cells[1]].push_back(PricePoint{*date, price});
  }
  for (auto& [ticker, points] : out) {
    std::sort(points.begin(), points.end(),
              [](const PricePoint& a, const PricePoint& b) {
                return a.date < b.date;
              });
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i - 1].date == points[i].date) {
        throw Error(Err::MalformedInput,
                    path.string() + ": " + ticker + " has duplicate date " +
                        points[i].date.to_string());
      }
    }
  }
  return out;
}

std::vector<EventCase> load_case_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Err::MalformedInput, path.string() + ": empty file");
  }
  const auto header = split_row(line);
  const std::vector<std::string> required{
      "case_id", "ticker", "outcome_date",   "registration_date",
      "outcome_group", "amount_claimed", "amount_awarded"};
  if (header.size() < required.size() ||
      !std::equal(required.begin(), required.end(), header.begin())) {
    bad_row(path, 1,
            "header must start with 'case_id,ticker,outcome_date,"
            "registration_date,outcome_group,amount_claimed,amount_awarded'");
  }
  const std::vector<std::string> covariate_names(
      header.begin() + static_cast<long>(required.size()), header.end());

  std::vector<EventCase> cases;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      bad_row(path, row,
              "expected " + std::to_string(header.size()) + " cells, got " +
                  std::to_string(cells.size()));
    }
    EventCase c;
    if (cells[0].empty()) bad_row(path, row, "empty case_id");
    c.case_id = cells[0];
    if (cells[1].empty()) bad_row(path, row, "empty ticker");
    c.ticker = cells[1];
    const auto outcome = Date::try_parse(cells[2]);
    if (!outcome) bad_row(path, row, "bad outcome_date '" + cells[2] + "'");
    c.outcome_date = *outcome;
    if (!cells[3].empty()) {
      const auto reg = Date::try_parse(cells[3]);
      if (!reg) bad_row(path, row, "bad registration_date '" + cells[3] + "'");
      c.registration_date = *reg;
    }
    const auto group = group_from_name(cells[4]);
    if (!group) {
      bad_row(path, row,
              "outcome_group '" + cells[4] +
                  "' is not one of investor/state/settled");
    }
    c.group = *group;
    const std::string where = path.string() + " row " + std::to_string(row);
    if (!cells[5].empty()) c.amount_claimed = parse_double(cells[5], where);
    if (!cells[6].empty()) c.amount_awarded = parse_double(cells[6], where);
    for (std::size_t k = 0; k < covariate_names.size(); ++k) {
      const std::string& cell = cells[required.size() + k];
      if (!cell.empty()) {
        c.covariates[covariate_names[k]] = parse_double(cell, where);
      }
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

void write_price_csv(
    const std::filesystem::path& path,
    const std::map<std::string, std::vector<PricePoint>>& prices) {
  auto out = create_or_throw(path);
  out << "date,ticker,adj_close\n";
  for (const auto& [ticker, points] : prices) {
    for (const auto& p : points) {
      out << p.date.to_string() << ',' << ticker << ','
          << format_double(p.price) << '\n';
    }
  }
}

void write_case_csv(const std::filesystem::path& path,
                    const std::vector<EventCase>& cases,
                    const std::vector<std::string>& covariate_columns) {
  auto out = create_or_throw(path);
  out << "case_id,ticker,outcome_date,registration_date,outcome_group,"
         "amount_claimed,amount_awarded";
  for (const auto& name : covariate_columns) out << ',' << name;
  out << '\n';
  for (const auto& c : cases) {
    out << c.case_id << ',' << c.ticker << ',' << c.outcome_date.to_string()
        << ',';
    if (c.registration_date) out << c.registration_date->to_string();
    out << ',' << group_name(c.group) << ',';
    if (c.amount_claimed) out << format_double(*c.amount_claimed);
    out << ',';
    if (c.amount_awarded) out << format_double(*c.amount_awarded);
    for (const auto& name : covariate_columns) {
      out << ',';
      const auto it = c.covariates.find(name);
      if (it != c.covariates.end()) out << format_double(it->second);
    }
    out << '\n';
  }
}

void write_return_series_csv(const std::filesystem::path& path,
                             const ReturnSeries& series) {
  auto out = create_or_throw(path);
  out << "date,log_return\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << series.dates[i].to_string() << ',' << format_double(series.values[i])
        << '\n';
  }
}

ReturnSeries read_return_series_csv(const std::filesystem::path& path,
                                    const std::string& ticker) {
  auto in = open_or_throw(path);
  std::string line;
  if (!std::getline(in, line) || split_row(line) !=
                                     std::vector<std::string>{"date",
                                                              "log_return"}) {
    bad_row(path, 1, "expected header 'date,log_return'");
  }
  ReturnSeries series;
  series.ticker = ticker;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != 2) bad_row(path, row, "expected 2 cells");
    const auto date = Date::try_parse(cells[0]);
    if (!date) bad_row(path, row, "bad date '" + cells[0] + "'");
    series.dates.push_back(*date);
    series.values.push_back(
        parse_double(cells[1], path.string() + " row " + std::to_string(row)));
  }
  return series;
}

}  // namespace volstudy
