#include "synthmot/image.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

#include <zlib.h>

#include "synthmot/errors.hpp"
#include "synthmot/fsutil.hpp"

namespace synthmot::render {

namespace {

void put_u32_be(std::string& out, uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

uint32_t read_u32_be(const uint8_t* p) {
    return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
           (static_cast<uint32_t>(p[2]) << 8) | static_cast<uint32_t>(p[3]);
}

void append_chunk(std::string& out, const char type[4], const std::string& data) {
    put_u32_be(out, static_cast<uint32_t>(data.size()));
    std::string body(type, 4);
    body += data;
    out += body;
    uint32_t crc = static_cast<uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size())));
    put_u32_be(out, crc);
}

std::string zlib_deflate(const std::string& raw) {
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::string out(bound, '\0');
    // Fixed level keeps output byte-stable for equal input.
    int rc = compress2(reinterpret_cast<Bytef*>(out.data()), &bound,
                       reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()),
                       6);
    if (rc != Z_OK) throw IoError("zlib compression failed");
    out.resize(bound);
    return out;
}

std::vector<uint8_t> zlib_inflate(const std::vector<uint8_t>& in, size_t expected) {
    std::vector<uint8_t> out(expected);
    uLongf dest_len = static_cast<uLongf>(expected);
    int rc = uncompress(out.data(), &dest_len, in.data(), static_cast<uLong>(in.size()));
    if (rc != Z_OK || dest_len != expected) throw IoError("corrupt PNG image data");
    return out;
}

const uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};

int paeth(int a, int b, int c) {
    int p = a + b - c;
    int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

FrameBuffer read_png(const std::string& path, const std::vector<uint8_t>& file) {
    if (file.size() < 8 + 25 || std::memcmp(file.data(), kPngSignature, 8) != 0) {
        throw IoError("not a PNG file: " + path);
    }
    size_t pos = 8;
    uint32_t width = 0, height = 0;
    int bit_depth = 0, color_type = -1;
    std::vector<uint8_t> idat;
    while (pos + 8 <= file.size()) {
        uint32_t len = read_u32_be(&file[pos]);
        if (pos + 12 + len > file.size()) throw IoError("truncated PNG: " + path);
        std::string type(reinterpret_cast<const char*>(&file[pos + 4]), 4);
        const uint8_t* data = &file[pos + 8];
        if (type == "IHDR") {
            if (len != 13) throw IoError("bad PNG header: " + path);
            width = read_u32_be(data);
            height = read_u32_be(data + 4);
            bit_depth = data[8];
            color_type = data[9];
            if (data[12] != 0) throw IoError("interlaced PNG unsupported: " + path);
        } else if (type == "IDAT") {
            idat.insert(idat.end(), data, data + len);
        } else if (type == "IEND") {
            break;
        }
        pos += 12 + len;
    }
    if (width == 0 || height == 0 || bit_depth != 8 ||
        (color_type != 0 && color_type != 2 && color_type != 6)) {
        throw IoError("unsupported PNG format (need 8-bit grey/RGB/RGBA): " + path);
    }
    int channels = color_type == 0 ? 1 : (color_type == 2 ? 3 : 4);
    size_t stride = static_cast<size_t>(width) * channels;
    std::vector<uint8_t> raw = zlib_inflate(idat, (stride + 1) * height);

    FrameBuffer fb(static_cast<int>(width), static_cast<int>(height));
    std::vector<uint8_t> prev(stride, 0), line(stride, 0);
    for (uint32_t y = 0; y < height; ++y) {
        const uint8_t* src = &raw[(stride + 1) * y];
        uint8_t filter = src[0];
        const uint8_t* s = src + 1;
        for (size_t i = 0; i < stride; ++i) {
            int a = i >= static_cast<size_t>(channels) ? line[i - channels] : 0;
            int b = prev[i];
            int c = i >= static_cast<size_t>(channels) ? prev[i - channels] : 0;
            int x = s[i];
            switch (filter) {
                case 0: break;
                case 1: x += a; break;
                case 2: x += b; break;
                case 3: x += (a + b) / 2; break;
                case 4: x += paeth(a, b, c); break;
                default: throw IoError("bad PNG filter byte: " + path);
            }
            line[i] = static_cast<uint8_t>(x & 0xff);
        }
        for (uint32_t x = 0; x < width; ++x) {
            size_t o = fb.offset(static_cast<int>(x), static_cast<int>(y));
            const uint8_t* px = &line[x * channels];
            if (channels == 1) {
                fb.pixels[o] = fb.pixels[o + 1] = fb.pixels[o + 2] = px[0];
            } else {
                fb.pixels[o] = px[0];
                fb.pixels[o + 1] = px[1];
                fb.pixels[o + 2] = px[2];
            }
        }
        prev = line;
    }
    return fb;
}

FrameBuffer read_ppm(const std::string& path, const std::vector<uint8_t>& file) {
    // Binary P6 with maxval 255; header tokens separated by whitespace.
    size_t pos = 0;
    auto next_token = [&]() -> std::string {
        while (pos < file.size()) {
            if (file[pos] == '#') {
                while (pos < file.size() && file[pos] != '\n') ++pos;
            } else if (std::isspace(file[pos])) {
                ++pos;
            } else {
                break;
            }
        }
        std::string tok;
        while (pos < file.size() && !std::isspace(file[pos])) tok += static_cast<char>(file[pos++]);
        return tok;
    };
    if (next_token() != "P6") throw IoError("not a binary PPM file: " + path);
    int width = std::stoi(next_token());
    int height = std::stoi(next_token());
    int maxval = std::stoi(next_token());
    ++pos;  // single whitespace after maxval
    if (width <= 0 || height <= 0 || maxval != 255) throw IoError("unsupported PPM: " + path);
    size_t need = static_cast<size_t>(width) * height * 3;
    if (file.size() - pos < need) throw IoError("truncated PPM: " + path);
    FrameBuffer fb(width, height);
    std::memcpy(fb.pixels.data(), &file[pos], need);
    return fb;
}

}  // namespace

void write_image(const FrameBuffer& fb, const std::string& path) {
    if (fb.width <= 0 || fb.height <= 0 ||
        fb.pixels.size() != static_cast<size_t>(fb.width) * fb.height * 3) {
        throw ValidationError("frame buffer dimensions do not match pixel data");
    }

    std::string raw;
    raw.reserve((static_cast<size_t>(fb.width) * 3 + 1) * fb.height);
    for (int y = 0; y < fb.height; ++y) {
        raw.push_back('\0');  // filter type 0 per scanline
        const uint8_t* row = &fb.pixels[fb.offset(0, y)];
        raw.append(reinterpret_cast<const char*>(row), static_cast<size_t>(fb.width) * 3);
    }

    std::string ihdr;
    put_u32_be(ihdr, static_cast<uint32_t>(fb.width));
    put_u32_be(ihdr, static_cast<uint32_t>(fb.height));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(2);   // color type: truecolor
    ihdr.push_back(0);   // compression
    ihdr.push_back(0);   // filter method
    ihdr.push_back(0);   // no interlace

    std::string out(reinterpret_cast<const char*>(kPngSignature), 8);
    append_chunk(out, "IHDR", ihdr);
    append_chunk(out, "IDAT", zlib_deflate(raw));
    append_chunk(out, "IEND", "");
    write_file_atomic(path, out);
}

FrameBuffer read_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image: " + path);
    std::vector<uint8_t> file((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    if (file.size() >= 8 && std::memcmp(file.data(), kPngSignature, 8) == 0) {
        return read_png(path, file);
    }
    if (file.size() >= 2 && file[0] == 'P' && file[1] == '6') {
        return read_ppm(path, file);
    }
    throw IoError("unsupported image format (need PNG or binary PPM): " + path);
}

}  // namespace synthmot::render
