#include <filesystem>

#include "commands.hpp"
#include "volstudy/csv.hpp"
#include "volstudy/errors.hpp"
#include "volstudy/simulate.hpp"

namespace volstudy::cli {

int cmd_simulate(const Config& config) {
  const std::filesystem::path out_dir = config.require_string("out");

  SimSpec spec;
  spec.num_cases = static_cast<std::size_t>(config.get_int("simulate.cases", 10));
  spec.num_days = static_cast<std::size_t>(config.get_int("simulate.days", 1100));
  spec.params.alpha = config.get_double("simulate.alpha", 0.0);
  spec.params.beta = config.get_double("simulate.beta", 1.0);
  spec.params.psi0 = config.get_double("simulate.psi0", 5e-6);
  spec.params.psi1 = config.get_double("simulate.psi1", 0.85);
  spec.params.psi2 = config.get_double("simulate.psi2", 0.10);
  spec.market_sigma = config.get_double("simulate.market_sigma", 0.01);
  spec.window = WindowSpec::parse(config.get_string("simulate.window", "2w,2w"));
  spec.injected_m = config.get_double("simulate.injected_m", 1.0);
  spec.seed = config.get_uint("seed", 1);
  spec.burn_in = static_cast<std::size_t>(config.get_int("simulate.burn_in", 1000));
  spec.estimation_length =
      static_cast<std::size_t>(config.get_int("estimation.length", 500));
  spec.tail_days =
      static_cast<std::size_t>(config.get_int("simulate.tail_days", 0));
  spec.start_date = Date::parse(config.get_string("simulate.start_date",
                                                  "2001-01-01"));
  spec.market_ticker = config.get_string("market_ticker", "MKT");
  spec.emit_covariates = config.get_bool("simulate.covariates", false);
  spec.workers = static_cast<int>(config.get_int("workers", 1));
  const std::string group = config.get_string("simulate.group", "investor");
  if (const auto g = group_from_name(group)) {
    spec.group = *g;
  } else {
    throw Error(Err::InvalidConfig,
                "simulate.group must be investor, state or settled");
  }
  if (!(spec.injected_m >= 0.0)) {
    throw Error(Err::InvalidConfig, "simulate.injected_m must be >= 0");
  }

  const SimPanel panel = simulate_panel(spec);

  std::filesystem::create_directories(out_dir);
  const auto price_path = out_dir / "prices.csv";
  const auto case_path = out_dir / "cases.csv";
  write_price_csv(price_path, panel.prices);
  write_case_csv(case_path, panel.cases, panel.covariate_columns);
  write_json_file(out_dir / "manifest.json",
                  make_manifest("simulate", config, {}));
  log_info("simulated " + std::to_string(spec.num_cases) + " case(s) into " +
           out_dir.string());
  return 0;
}

}  // namespace volstudy::cli
