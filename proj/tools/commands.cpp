#include "commands.hpp"

#include <fstream>
#include <iostream>

#include "volstudy/digest.hpp"
#include "volstudy/errors.hpp"

namespace volstudy::cli {

void log_warn(const std::string& message) {
  std::cerr << "volstudy [warn] " << message << "\n";
}

void log_info(const std::string& message) {
  std::cerr << "volstudy [info] " << message << "\n";
}

nlohmann::json make_manifest(const std::string& command, const Config& config,
                             const std::vector<std::filesystem::path>& inputs) {
  nlohmann::json inputs_json = nlohmann::json::object();
  for (const auto& path : inputs) {
    inputs_json[path.filename().string()] = {
        {"path", path.string()}, {"fnv1a64", file_digest(path)}};
  }
  // The worker count never affects results, so it is left out of the echo;
  // reruns at different parallelism then write identical bytes.
  nlohmann::json echo = config.raw();
  echo.erase("workers");
  return nlohmann::json{{"tool", "volstudy"},
                        {"version", kToolVersion},
                        {"schema", 1},
                        {"command", command},
                        {"config", echo},
                        {"inputs", inputs_json}};
}

void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& value) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Err::IoFailure, "cannot create " + path.string());
  }
  out << value.dump(2) << "\n";
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Err::IoFailure, "cannot create " + path.string());
  }
  out << text;
}

}  // namespace volstudy::cli
