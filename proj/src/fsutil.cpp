#include "synthmot/fsutil.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "synthmot/errors.hpp"

namespace synthmot {

namespace fs = std::filesystem;

void write_file_atomic(const std::string& path, const std::string& content) {
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";

    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write file: " + path);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("cannot write file: " + path);
        }
    }

    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot replace file: " + path);
    }
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec || !fs::is_directory(path)) throw IoError("cannot create directory: " + path);
}

}  // namespace synthmot
