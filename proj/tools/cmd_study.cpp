#include <filesystem>
#include <string>
#include <vector>

#include "commands.hpp"
#include "volstudy/csv.hpp"
#include "volstudy/errors.hpp"
#include "volstudy/event_study.hpp"
#include "volstudy/json_io.hpp"

namespace volstudy::cli {

namespace {

std::vector<OutcomeGroup> groups_from_config(const Config& config) {
  const std::string wanted = config.get_string("group", "all");
  if (wanted == "all") {
    return {OutcomeGroup::investor, OutcomeGroup::state, OutcomeGroup::settled};
  }
  const auto g = group_from_name(wanted);
  if (!g) {
    throw Error(Err::InvalidConfig,
                "group must be investor, state, settled or all, got '" +
                    wanted + "'");
  }
  return {*g};
}

std::string file_tag(const std::string& compact) {
  std::string tag = compact;
  for (char& c : tag) {
    if (c == ',') c = '_';
  }
  return tag;
}

}  // namespace

int cmd_study(const Config& config) {
  const std::filesystem::path price_path = config.require_string("price_file");
  const std::filesystem::path case_path = config.require_string("case_file");
  const std::filesystem::path out_dir = config.require_string("out");
  const std::string market_ticker = config.get_string("market_ticker", "MKT");

  StudyConfig study_cfg;
  study_cfg.estimation_length =
      static_cast<std::size_t>(config.get_int("estimation.length", 500));
  study_cfg.garch.min_obs =
      static_cast<std::size_t>(config.get_int("garch.min_obs", 100));
  study_cfg.garch.tolerance = config.get_double("garch.tolerance", 1e-8);
  study_cfg.garch.max_iterations =
      static_cast<int>(config.get_int("garch.max_iterations", 500));
  study_cfg.bootstrap_replications = static_cast<std::size_t>(
      config.get_int("bootstrap.replications", 5000));
  study_cfg.seed = config.get_uint("seed", 1);
  study_cfg.workers = static_cast<int>(config.get_int("workers", 1));
  if (study_cfg.bootstrap_replications < 1) {
    throw Error(Err::InvalidConfig, "bootstrap.replications must be >= 1");
  }
  if (study_cfg.workers < 1) {
    throw Error(Err::InvalidConfig, "workers must be >= 1");
  }

  std::vector<WindowSpec> windows;
  for (const auto& text : config.get_string_list(
           "windows", {"2d,2d", "1w,1w", "2w,2w", "1m,1m", "1m,2m"})) {
    windows.push_back(WindowSpec::parse(text));
  }
  const auto groups = groups_from_config(config);

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

  std::vector<CasePanel> panels;
  nlohmann::json excluded = nlohmann::json::array();
  for (const auto& c : cases) {
    const auto it = prices.find(c.ticker);
    if (it == prices.end()) {
      log_warn(c.case_id + ": ticker '" + c.ticker +
               "' not in price file, case excluded");
      excluded.push_back({{"case_id", c.case_id},
                          {"reason", "ticker not in price file"}});
      continue;
    }
    try {
      panels.push_back(
          CasePanel{c, align(compute_log_returns(c.ticker, it->second), market)});
    } catch (const Error& e) {
      log_warn(c.case_id + ": " + e.what() + ", case excluded");
      excluded.push_back({{"case_id", c.case_id}, {"reason", e.what()}});
    }
  }

  std::filesystem::create_directories(out_dir);
  nlohmann::json results = nlohmann::json::array();
  std::string summary = cav_csv_header();
  std::size_t successes = 0;

  for (const auto& window : windows) {
    std::string paths_csv = "group,day_offset,cumulative_abnormal_volatility\n";
    bool any_path = false;
    for (const auto group : groups) {
      try {
        const GroupStudyResult study =
            run_group_study(panels, group, window, study_cfg);
        for (const auto& d : study.dropped) {
          log_warn(std::string(group_name(group)) + " " + window.compact() +
                   ": dropped " + d.case_id + " (" + d.reason + ")");
        }
        results.push_back(study);
        summary += cav_csv_row(study.result);
        for (std::size_t t = 0; t < study.cumulative.size(); ++t) {
          paths_csv += std::string(group_name(group)) + "," +
                       std::to_string(study.day_offsets[t]) + "," +
                       format_double(study.cumulative[t]) + "\n";
        }
        any_path = true;
        ++successes;
      } catch (const Error& e) {
        log_warn(std::string(group_name(group)) + " " + window.compact() +
                 ": " + e.what());
        results.push_back({{"group", group_name(group)},
                           {"window", window.compact()},
                           {"error", e.what()}});
      }
    }
    if (any_path) {
      write_text_file(out_dir / ("paths_" + file_tag(window.compact()) + ".csv"),
                      paths_csv);
    }
  }

  nlohmann::json doc{{"results", results}, {"excluded_cases", excluded}};
  write_json_file(out_dir / "cav_results.json", doc);
  write_text_file(out_dir / "summary.csv", summary);
  write_json_file(out_dir / "manifest.json",
                  make_manifest("study", config, {price_path, case_path}));

  if (successes == 0) {
    throw Error(Err::TooFewCases, "no group produced a usable study");
  }
  log_info("study wrote " + std::to_string(successes) + " result(s) to " +
           out_dir.string());
  return 0;
}

}  // namespace volstudy::cli
