#include <filesystem>
#include <iostream>
#include <optional>

#include "commands.hpp"
#include "volstudy/csv.hpp"
#include "volstudy/errors.hpp"
#include "volstudy/garch.hpp"
#include "volstudy/json_io.hpp"

namespace volstudy::cli {

// Single-case diagnostic: fit the variance model on the estimation range in
// front of one announcement window and emit the fit as JSON.
int cmd_fit(const Config& config) {
  const std::filesystem::path price_path = config.require_string("price_file");
  const std::string market_ticker = config.get_string("market_ticker", "MKT");
  const WindowSpec window =
      WindowSpec::parse(config.get_string("fit.window", "2w,2w"));

  std::string ticker;
  std::optional<Date> outcome;
  if (config.has("fit.case_id")) {
    const std::filesystem::path case_path = config.require_string("case_file");
    const std::string case_id = config.require_string("fit.case_id");
    for (const auto& c : load_case_csv(case_path)) {
      if (c.case_id == case_id) {
        ticker = c.ticker;
        outcome = c.outcome_date;
        break;
      }
    }
    if (!outcome) {
      throw Error(Err::MalformedInput,
                  "case '" + case_id + "' not found in " + case_path.string());
    }
  } else {
    ticker = config.require_string("fit.ticker");
    outcome = Date::parse(config.require_string("fit.outcome_date"));
  }

  const auto prices = load_price_csv(price_path);
  const auto stock_it = prices.find(ticker);
  if (stock_it == prices.end()) {
    throw Error(Err::MalformedInput,
                "ticker '" + ticker + "' not in " + price_path.string());
  }
  const auto market_it = prices.find(market_ticker);
  if (market_it == prices.end()) {
    throw Error(Err::MalformedInput,
                "market ticker '" + market_ticker + "' not in " +
                    price_path.string());
  }

  const AlignedPanel panel =
      align(compute_log_returns(ticker, stock_it->second),
            compute_log_returns(market_ticker, market_it->second));
  const IndexRange est = estimation_range(
      panel, *outcome, window,
      static_cast<std::size_t>(config.get_int("estimation.length", 500)));

  GarchConfig garch_cfg;
  garch_cfg.min_obs = static_cast<std::size_t>(config.get_int("garch.min_obs", 100));
  garch_cfg.tolerance = config.get_double("garch.tolerance", 1e-8);
  garch_cfg.max_iterations =
      static_cast<int>(config.get_int("garch.max_iterations", 500));

  const GarchFit fit = fit_garch(panel, est, garch_cfg);
  if (!fit.converged) {
    log_warn(ticker + ": fit did not converge within " +
             std::to_string(fit.iterations) + " iterations");
  }

  nlohmann::json doc{
      {"manifest", make_manifest("fit", config, {price_path})},
      {"ticker", ticker},
      {"outcome_date", outcome->to_string()},
      {"fit", fit},
  };
  if (config.has("out")) {
    const std::filesystem::path out_path = config.require_string("out");
    if (out_path.has_parent_path()) {
      std::filesystem::create_directories(out_path.parent_path());
    }
    write_json_file(out_path, doc);
    log_info("fit written to " + out_path.string());
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  return fit.converged ? 0 : 4;
}

}  // namespace volstudy::cli
