// Flat key/value run configuration: a JSON object whose keys are dotted
// names ("bootstrap.replications"), merged with command-line overrides.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace volstudy::cli {

class Config {
 public:
  Config();
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const nlohmann::json& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_string_list(
      const std::string& key, const std::vector<std::string>& fallback) const;

  const nlohmann::json& raw() const { return values_; }

 private:
  nlohmann::json values_;
};

}  // namespace volstudy::cli
