// Subcommand entry points and the bits they share (logging, manifests).
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace volstudy::cli {

inline constexpr const char* kToolVersion = "0.1.0";

void log_warn(const std::string& message);
void log_info(const std::string& message);

// Manifest: effective config echo, seed, tool/schema versions, and digests of
// the input files. Deliberately carries no timestamps so repeated runs write
// identical bytes.
nlohmann::json make_manifest(const std::string& command, const Config& config,
                             const std::vector<std::filesystem::path>& inputs);

void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& value);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

int cmd_study(const Config& config);
int cmd_regress(const Config& config);
int cmd_simulate(const Config& config);
int cmd_fit(const Config& config);

}  // namespace volstudy::cli
