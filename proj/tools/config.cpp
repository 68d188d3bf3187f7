#include "config.hpp"

#include <fstream>
#include <set>

#include "volstudy/errors.hpp"

namespace volstudy::cli {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "price_file",
      "case_file",
      "market_ticker",
      "seed",
      "workers",
      "out",
      "group",
      "windows",
      "estimation.length",
      "garch.min_obs",
      "garch.tolerance",
      "garch.max_iterations",
      "bootstrap.replications",
      "regress.window",
      "regress.robust",
      "fit.case_id",
      "fit.ticker",
      "fit.outcome_date",
      "fit.window",
      "simulate.cases",
      "simulate.days",
      "simulate.alpha",
      "simulate.beta",
      "simulate.psi0",
      "simulate.psi1",
      "simulate.psi2",
      "simulate.market_sigma",
      "simulate.window",
      "simulate.injected_m",
      "simulate.burn_in",
      "simulate.tail_days",
      "simulate.start_date",
      "simulate.group",
      "simulate.covariates",
  };
  return keys;
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw Error(Err::InvalidConfig, "config key '" + key + "' " + why);
}

}  // namespace

Config::Config() : values_(nlohmann::json::object()) {}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Err::InvalidConfig, "cannot open config " + path.string());
  }
  Config cfg;
  try {
    in >> cfg.values_;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Err::InvalidConfig,
                path.string() + " is not valid JSON: " + e.what());
  }
  if (!cfg.values_.is_object()) {
    throw Error(Err::InvalidConfig,
                path.string() + " must hold a flat JSON object");
  }
  for (const auto& [key, value] : cfg.values_.items()) {
    (void)value;
    if (!known_keys().contains(key)) bad_key(key, "is not recognized");
  }
  return cfg;
}

void Config::set(const std::string& key, const nlohmann::json& value) {
  values_[key] = value;
}

bool Config::has(const std::string& key) const {
  return values_.contains(key);
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  if (!has(key)) return fallback;
  if (!values_[key].is_string()) bad_key(key, "must be a string");
  return values_[key].get<std::string>();
}

std::string Config::require_string(const std::string& key) const {
  if (!has(key)) bad_key(key, "is required");
  if (!values_[key].is_string()) bad_key(key, "must be a string");
  return values_[key].get<std::string>();
}

std::int64_t Config::get_int(const std::string& key,
                             std::int64_t fallback) const {
  if (!has(key)) return fallback;
  if (!values_[key].is_number_integer()) bad_key(key, "must be an integer");
  return values_[key].get<std::int64_t>();
}

std::uint64_t Config::get_uint(const std::string& key,
                               std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  if (!values_[key].is_number_unsigned() && !values_[key].is_number_integer()) {
    bad_key(key, "must be a non-negative integer");
  }
  const auto v = values_[key].get<std::int64_t>();
  if (v < 0) bad_key(key, "must be a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

double Config::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  if (!values_[key].is_number()) bad_key(key, "must be a number");
  return values_[key].get<double>();
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  if (!values_[key].is_boolean()) bad_key(key, "must be true or false");
  return values_[key].get<bool>();
}

std::vector<std::string> Config::get_string_list(
    const std::string& key, const std::vector<std::string>& fallback) const {
  if (!has(key)) return fallback;
  if (!values_[key].is_array()) bad_key(key, "must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : values_[key]) {
    if (!item.is_string()) bad_key(key, "must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace volstudy::cli
