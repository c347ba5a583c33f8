#pragma once

// 8-bit grayscale images: binary PGM (P5) I/O, edge-replication padding and
// the blockwise DCT round trip used by the image benchmark.

#include "cordic/dct.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace cordic {

struct ImageBuffer {
    int width = 0;
    int height = 0;
    int maxval = 255;
    std::vector<std::uint8_t> samples; // row-major
    // Size before padding (equal to width/height for unpadded images).
    int original_width = 0;
    int original_height = 0;

    static ImageBuffer make(int width, int height, std::uint8_t fill = 0);

    std::uint8_t at(int x, int y) const { return samples[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return samples[static_cast<std::size_t>(y) * width + x]; }
    bool padded() const noexcept { return width != original_width || height != original_height; }
};

// Throws ParseError (with the byte offset) on malformed or non-P5 input.
ImageBuffer parse_pgm(std::span<const std::uint8_t> bytes);
// "P5\n<w> <h>\n<maxval>\n" followed by the payload.
std::vector<std::uint8_t> encode_pgm(const ImageBuffer& image);

// Throw IoError when the file cannot be opened, read or written.
ImageBuffer read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const ImageBuffer& image);

// Grows both sides to a multiple of n by repeating the last column/row.
ImageBuffer pad_to_multiple(const ImageBuffer& image, int n = 8);
ImageBuffer crop(const ImageBuffer& image, int width, int height);

// Pads, runs forward (level shift -128, `forward`) then inverse (`inverse`,
// +128, round, clamp to [0, 255]) on every 8x8 block, and crops back.
ImageBuffer dct_round_trip(const ImageBuffer& image, const DctMatrix8& forward,
                           const DctMatrix8& inverse);

} // namespace cordic
