// volstudy: abnormal-volatility event studies around case outcome dates.
//   study     pooled volatility multipliers, CAV, chi-square + resampling tests
//   regress   cross-sectional OLS of abnormal volatility on case features
//   simulate  synthetic market/case data from the same model the study fits
//   fit       single-case variance-model diagnostic
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "volstudy/errors.hpp"

namespace {

using volstudy::cli::Config;

struct CommonFlags {
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> window;
  std::optional<std::string> group;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--out", flags.out, "output directory (or file for fit)");
  cmd->add_option("--seed", flags.seed, "master random seed");
  cmd->add_option("--workers", flags.workers, "worker thread count");
  cmd->add_option("--window", flags.window,
                  "announcement window, e.g. 2d,2d or 1m,2m");
  cmd->add_option("--group", flags.group,
                  "outcome group: investor, state, settled or all");
}

Config assemble(const CommonFlags& flags, const std::string& command) {
  Config config;
  if (flags.config_path) config = Config::load(*flags.config_path);
  if (flags.out) config.set("out", *flags.out);
  if (flags.seed) config.set("seed", *flags.seed);
  if (flags.workers) config.set("workers", *flags.workers);
  if (flags.group) {
    config.set(command == "simulate" ? "simulate.group" : "group", *flags.group);
  }
  if (flags.window) {
    if (command == "study") {
      config.set("windows", nlohmann::json::array({*flags.window}));
    } else if (command == "regress") {
      config.set("regress.window", *flags.window);
    } else if (command == "simulate") {
      config.set("simulate.window", *flags.window);
    } else {
      config.set("fit.window", *flags.window);
    }
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abnormal-volatility event studies"};
  app.require_subcommand(1);

  CommonFlags study_flags, regress_flags, simulate_flags, fit_flags;
  auto* study = app.add_subcommand("study", "run the pooled event study");
  add_common_flags(study, study_flags);
  auto* regress = app.add_subcommand(
      "regress", "regress abnormal volatility on case features");
  add_common_flags(regress, regress_flags);
  auto* simulate = app.add_subcommand("simulate", "generate synthetic data");
  add_common_flags(simulate, simulate_flags);
  auto* fit = app.add_subcommand("fit", "fit one case's variance model");
  add_common_flags(fit, fit_flags);

  std::string fit_case_id, fit_ticker, fit_outcome;
  fit->add_option("--case-id", fit_case_id, "case to fit (needs case_file)");
  fit->add_option("--ticker", fit_ticker, "ticker to fit");
  fit->add_option("--outcome-date", fit_outcome, "outcome date YYYY-MM-DD");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (study->parsed()) {
      return volstudy::cli::cmd_study(assemble(study_flags, "study"));
    }
    if (regress->parsed()) {
      return volstudy::cli::cmd_regress(assemble(regress_flags, "regress"));
    }
    if (simulate->parsed()) {
      return volstudy::cli::cmd_simulate(assemble(simulate_flags, "simulate"));
    }
    Config config = assemble(fit_flags, "fit");
    if (!fit_case_id.empty()) config.set("fit.case_id", fit_case_id);
    if (!fit_ticker.empty()) config.set("fit.ticker", fit_ticker);
    if (!fit_outcome.empty()) config.set("fit.outcome_date", fit_outcome);
    return volstudy::cli::cmd_fit(config);
  } catch (const volstudy::Error& e) {
    std::cerr << "volstudy [error] " << e.what() << "\n";
    switch (e.error_class()) {
      case volstudy::ErrClass::config: return 2;
      case volstudy::ErrClass::data: return 3;
      case volstudy::ErrClass::numerical: return 4;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "volstudy [error] " << e.what() << "\n";
    return 1;
  }
}
