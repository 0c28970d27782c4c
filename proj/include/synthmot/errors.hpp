#pragma once

#include <stdexcept>
#include <string>

namespace synthmot {

/// Bad user input: config values, malformed annotation files, CLI arguments.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem trouble: unwritable paths, missing directories, refusal to overwrite.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace synthmot
