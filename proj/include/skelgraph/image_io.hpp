#pragma once

#include <string>

#include "skelgraph/image.hpp"

namespace skelgraph {

// BT.601 luminance, rounded half-up.
inline std::uint8_t luminance_u8(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return clamp_round_u8(0.299 * r + 0.587 * g + 0.114 * b);
}

// Reads a PGM (P2/P5) or PPM (P3/P6) file with maxval <= 255. Color inputs are
// reduced to luminance; gray intensities are preserved bit-exactly.
GrayImage load_grayscale(const std::string& path);

// Reads a PGM and maps nonzero intensities to 1.
BinaryImage load_binary(const std::string& path);

void write_pgm(const GrayImage& img, const std::string& path);

// Serialized with values {0,255}.
void write_pgm(const BinaryImage& img, const std::string& path);

void write_ppm(const RgbImage& img, const std::string& path);

// Writes to "<path>.tmp" then renames, so readers never observe partial files.
void write_file_atomic(const std::string& path, const std::string& bytes);

std::string read_file(const std::string& path);

} // namespace skelgraph
