#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "volstudy/cross_section.hpp"
#include "volstudy/csv.hpp"
#include "volstudy/errors.hpp"
#include "volstudy/json_io.hpp"

namespace volstudy::cli {

int cmd_regress(const Config& config) {
  const std::filesystem::path price_path = config.require_string("price_file");
  const std::filesystem::path case_path = config.require_string("case_file");
  const std::filesystem::path out_dir = config.require_string("out");
  const std::string market_ticker = config.get_string("market_ticker", "MKT");
  const WindowSpec window =
      WindowSpec::parse(config.get_string("regress.window", "1m,2m"));
  const auto estimation_length =
      static_cast<std::size_t>(config.get_int("estimation.length", 500));
  const bool robust = config.get_bool("regress.robust", false);

  const auto prices = load_price_csv(price_path);
  const auto cases = load_case_csv(case_path);
  const auto market_it = prices.find(market_ticker);
  if (market_it == prices.end()) {
    throw Error(Err::MalformedInput,
                "market ticker '" + market_ticker + "' not in " +
                    price_path.string());
  }
  const ReturnSeries market =
      compute_log_returns(market_ticker, market_it->second);

  // Abnormal volatility per decided case: event-window return variance over
  // the variance across the pre-event estimation range.
  std::vector<CaseFeatures> features;
  std::vector<std::string> warnings;
  nlohmann::json av_json = nlohmann::json::object();
  for (const auto& c : cases) {
    if (c.group == OutcomeGroup::settled) continue;
    const auto it = prices.find(c.ticker);
    if (it == prices.end()) {
      warnings.push_back(c.case_id + ": ticker '" + c.ticker +
                         "' not in price file, case excluded");
      continue;
    }
    try {
      const AlignedPanel panel =
          align(compute_log_returns(c.ticker, it->second), market);
      const IndexRange win = resolve_window(panel, c.outcome_date, window);
      const IndexRange pre =
          estimation_range(panel, c.outcome_date, window, estimation_length);
      const std::span<const double> stock(panel.stock);
      const double av = abnormal_volatility(
          stock.subspan(win.first, win.length()),
          stock.subspan(pre.first, pre.length()));
      if (const auto f = extract_features(c, av, warnings)) {
        features.push_back(*f);
        av_json[c.case_id] = av;
      }
    } catch (const Error& e) {
      warnings.push_back(c.case_id + ": " + std::string(e.what()) +
                         ", case excluded");
    }
  }
  for (const auto& w : warnings) log_warn(w);

  const Design design = build_design(features);
  const RegressionResult result = fit_ols(design, robust);

  const std::string table = render_regression_table(result);
  std::cout << table;

  std::filesystem::create_directories(out_dir);
  nlohmann::json doc{{"result", result},
                     {"window", window.compact()},
                     {"abnormal_volatility", av_json},
                     {"warnings", warnings}};
  write_json_file(out_dir / "regression.json", doc);
  write_text_file(out_dir / "regression.txt", table);
  write_json_file(out_dir / "manifest.json",
                  make_manifest("regress", config, {price_path, case_path}));
  return 0;
}

}  // namespace volstudy::cli
