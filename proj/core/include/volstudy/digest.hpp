// Content digests for run manifests (reproducibility bookkeeping, not crypto).
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace volstudy {

// FNV-1a 64-bit digest rendered as 16 hex characters.
std::string content_digest(std::string_view bytes);

// Digest of a whole file; throws Error(IoFailure) if unreadable.
std::string file_digest(const std::filesystem::path& path);

}  // namespace volstudy
