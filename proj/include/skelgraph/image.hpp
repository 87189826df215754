#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "skelgraph/errors.hpp"

namespace skelgraph {

// Round half-up, clamp to [0,255].
inline std::uint8_t clamp_round_u8(double v) {
    double r = std::floor(v + 0.5);
    if (r < 0.0) return 0;
    if (r > 255.0) return 255;
    return static_cast<std::uint8_t>(r);
}

// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        if (w < 1 || h < 1) throw ParamError("image dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h, fill);
    }

    std::uint8_t& at(int r, int c) { return data[static_cast<std::size_t>(r) * width + c]; }
    std::uint8_t at(int r, int c) const { return data[static_cast<std::size_t>(r) * width + c]; }
    bool in_bounds(int r, int c) const { return r >= 0 && r < height && c >= 0 && c < width; }

    bool operator==(const GrayImage&) const = default;
};

// Row-major raster of {0,1} values.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        if (w < 1 || h < 1) throw ParamError("image dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h, fill);
    }

    std::uint8_t& at(int r, int c) { return data[static_cast<std::size_t>(r) * width + c]; }
    std::uint8_t at(int r, int c) const { return data[static_cast<std::size_t>(r) * width + c]; }
    bool in_bounds(int r, int c) const { return r >= 0 && r < height && c >= 0 && c < width; }

    std::size_t count_foreground() const {
        std::size_t n = 0;
        for (auto v : data) n += (v != 0);
        return n;
    }

    bool operator==(const BinaryImage&) const = default;
};

// A skeleton is a binary image that is a fixed point of thinning.
using SkeletonImage = BinaryImage;

// Interleaved 8-bit RGB raster.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // 3 bytes per pixel

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h) {
        if (w < 1 || h < 1) throw ParamError("image dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h * 3, 0);
    }

    void set(int r, int c, std::uint8_t red, std::uint8_t green, std::uint8_t blue) {
        std::size_t i = (static_cast<std::size_t>(r) * width + c) * 3;
        data[i] = red;
        data[i + 1] = green;
        data[i + 2] = blue;
    }
    const std::uint8_t* pixel(int r, int c) const {
        return &data[(static_cast<std::size_t>(r) * width + c) * 3];
    }

    bool operator==(const RgbImage&) const = default;
};

} // namespace skelgraph
