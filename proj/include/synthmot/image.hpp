#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synthmot/color.hpp"

namespace synthmot::render {

/// 8-bit RGB raster, row-major, no padding.
struct FrameBuffer {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;  // width * height * 3

    FrameBuffer() = default;
    FrameBuffer(int w, int h) : width(w), height(h), pixels(static_cast<size_t>(w) * h * 3, 0) {}

    size_t offset(int x, int y) const { return (static_cast<size_t>(y) * width + x) * 3; }

    void set(int x, int y, const Color& c) {
        size_t o = offset(x, y);
        pixels[o] = to_byte(c.r);
        pixels[o + 1] = to_byte(c.g);
        pixels[o + 2] = to_byte(c.b);
    }

    Color get(int x, int y) const {
        size_t o = offset(x, y);
        return {pixels[o] / 255.0, pixels[o + 1] / 255.0, pixels[o + 2] / 255.0};
    }

    bool operator==(const FrameBuffer& o) const {
        return width == o.width && height == o.height && pixels == o.pixels;
    }

    static uint8_t to_byte(double v) {
        return static_cast<uint8_t>(clamp01(v) * 255.0 + 0.5);
    }
};

/// Writes a lossless PNG (8-bit RGB, zlib-compressed, fixed settings so equal
/// buffers produce byte-identical files). The write is temp-file + rename.
void write_image(const FrameBuffer& fb, const std::string& path);

/// Reads a .png (8-bit grey/RGB/RGBA, non-interlaced) or binary .ppm file
/// into an RGB buffer. Throws IoError naming the file on anything else.
FrameBuffer read_image(const std::string& path);

}  // namespace synthmot::render
