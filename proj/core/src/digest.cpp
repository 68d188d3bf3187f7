#include "volstudy/digest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "volstudy/errors.hpp"
#include "volstudy/rng.hpp"

namespace volstudy {

std::string content_digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Err::IoFailure, "cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return content_digest(buffer.str());
}

}  // namespace volstudy
