#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "spinevol/core.hpp"

namespace spinevol {

// 8-bit grayscale image, row-major.
struct Image8 {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;

    Image8() = default;
    Image8(int w, int h, uint8_t fill = 0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    const uint8_t* row(int y) const { return data.data() + static_cast<size_t>(y) * width; }
    uint8_t* row(int y) { return data.data() + static_cast<size_t>(y) * width; }
    bool empty() const { return data.empty(); }
    size_t size() const { return data.size(); }

    bool operator==(const Image8& o) const = default;
};

// Binary PGM (P5), maxval 255.
inline void write_pgm(const Image8& img, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path.string());
    f << "P5\n" << img.width << " " << img.height << "\n255\n";
    f.write(reinterpret_cast<const char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
    if (!f) throw IoError("write failed: " + path.string());
}

inline Image8 read_pgm(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path.string());
    std::string magic;
    f >> magic;
    if (magic != "P5") throw InvalidInput("not a binary PGM (P5): " + path.string());
    auto next_int = [&f, &path]() {
        // Skip whitespace and '#' comment lines.
        int c;
        while ((c = f.peek()) != EOF) {
            if (c == '#') {
                std::string line;
                std::getline(f, line);
            } else if (std::isspace(c)) {
                f.get();
            } else {
                break;
            }
        }
        long v = -1;
        f >> v;
        if (!f || v < 0) throw InvalidInput("malformed PGM header: " + path.string());
        return v;
    };
    long w = next_int();
    long h = next_int();
    long maxval = next_int();
    if (maxval != 255) throw InvalidInput("unsupported PGM maxval: " + path.string());
    f.get();  // single whitespace after maxval
    Image8 img(static_cast<int>(w), static_cast<int>(h));
    f.read(reinterpret_cast<char*>(img.data.data()),
           static_cast<std::streamsize>(img.data.size()));
    if (f.gcount() != static_cast<std::streamsize>(img.data.size()))
        throw InvalidInput("truncated PGM data: " + path.string());
    return img;
}

}  // namespace spinevol
