#pragma once

#include <string>

namespace synthmot {

/// Writes `content` to `path` via a temp file in the same directory and an
/// atomic rename, so readers never observe a half-written file. Throws
/// IoError with the path on failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// mkdir -p. Throws IoError on failure.
void ensure_directory(const std::string& path);

}  // namespace synthmot
