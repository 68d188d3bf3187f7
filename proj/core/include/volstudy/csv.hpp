// CSV ingestion and emission. Formats:
//   prices: date,ticker,adj_close            (ISO dates, positive closes)
//   cases:  case_id,ticker,outcome_date,registration_date,outcome_group,
//           amount_claimed,amount_awarded[,<covariate>...]
// Empty cells mean "missing". Malformed rows are hard errors that name the
// offending row number.
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "volstudy/series.hpp"

namespace volstudy {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& text, const std::string& where);

std::map<std::string, std::vector<PricePoint>> load_price_csv(
    const std::filesystem::path& path);

std::vector<EventCase> load_case_csv(const std::filesystem::path& path);

void write_price_csv(const std::filesystem::path& path,
                     const std::map<std::string, std::vector<PricePoint>>& prices);

void write_case_csv(const std::filesystem::path& path,
                    const std::vector<EventCase>& cases,
                    const std::vector<std::string>& covariate_columns = {});

// Round-trip format "date,return"; reading back what was written reproduces
// the series bit-exactly.
void write_return_series_csv(const std::filesystem::path& path,
                             const ReturnSeries& series);
ReturnSeries read_return_series_csv(const std::filesystem::path& path,
                                    const std::string& ticker = "");

}  // namespace volstudy
