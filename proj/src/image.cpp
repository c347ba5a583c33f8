#include "cordic/image.hpp"

#include "cordic/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

namespace cordic {

namespace {

class HeaderReader {
public:
    HeaderReader(std::span<const std::uint8_t> bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

    std::size_t offset() const noexcept { return pos_; }

    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    int number(const char* what)
    {
        skip_space_and_comments();
        if (pos_ >= bytes_.size())
            throw ParseError(std::string("PGM: truncated header, expected ") + what, pos_);
        if (!std::isdigit(bytes_[pos_]))
            throw ParseError(std::string("PGM: expected ") + what, pos_);
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000)
                throw ParseError(std::string("PGM: ") + what + " too large", pos_);
            ++pos_;
        }
        return static_cast<int>(value);
    }

    void single_whitespace()
    {
        if (pos_ >= bytes_.size())
            throw ParseError("PGM: truncated header, expected whitespace before the raster", pos_);
        if (!std::isspace(bytes_[pos_]))
            throw ParseError("PGM: expected whitespace before the raster", pos_);
        ++pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

ImageBuffer ImageBuffer::make(int width, int height, std::uint8_t fill)
{
    if (width <= 0 || height <= 0)
        throw UsageError("image dimensions must be positive");
    ImageBuffer img;
    img.width = img.original_width = width;
    img.height = img.original_height = height;
    img.samples.assign(static_cast<std::size_t>(width) * height, fill);
    return img;
}

ImageBuffer parse_pgm(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 2)
        throw ParseError("PGM: truncated magic number", bytes.size());
    if (bytes[0] != 'P' || bytes[1] != '5') {
        std::string magic(bytes.begin(), bytes.begin() + 2);
        throw ParseError("unsupported image format '" + magic + "' (binary PGM P5 only)", 0);
    }
    HeaderReader header(bytes, 2);
    const int width = header.number("width");
    const int height = header.number("height");
    const int maxval = header.number("maxval");
    const std::size_t fields_end = header.offset();
    header.single_whitespace();
    if (width <= 0 || height <= 0)
        throw ParseError("PGM: image dimensions must be positive", fields_end);
    if (maxval <= 0 || maxval > 255)
        throw ParseError("PGM: maxval must be 1..255 (8-bit samples only)", fields_end);

    const std::size_t start = header.offset();
    const std::size_t need = static_cast<std::size_t>(width) * height;
    if (bytes.size() - start < need)
        throw ParseError("PGM: truncated raster, expected " + std::to_string(need) +
                             " bytes, found " + std::to_string(bytes.size() - start),
                         bytes.size());

    ImageBuffer img;
    img.width = img.original_width = width;
    img.height = img.original_height = height;
    img.maxval = maxval;
    img.samples.assign(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                       bytes.begin() + static_cast<std::ptrdiff_t>(start + need));
    for (std::size_t i = 0; i < need; ++i)
        if (img.samples[i] > maxval)
            throw ParseError("PGM: sample exceeds maxval", start + i);
    return img;
}

std::vector<std::uint8_t> encode_pgm(const ImageBuffer& image)
{
    const std::string header = "P5\n" + std::to_string(image.width) + " " +
                               std::to_string(image.height) + "\n" +
                               std::to_string(image.maxval) + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.samples.begin(), image.samples.end());
    return out;
}

ImageBuffer read_pgm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("error reading '" + path.string() + "'");
    return parse_pgm(bytes);
}

void write_pgm(const std::filesystem::path& path, const ImageBuffer& image)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    const auto bytes = encode_pgm(image);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("error writing '" + path.string() + "'");
}

ImageBuffer pad_to_multiple(const ImageBuffer& image, int n)
{
    if (n <= 0)
        throw UsageError("pad_to_multiple: block size must be positive");
    const int w = (image.width + n - 1) / n * n;
    const int h = (image.height + n - 1) / n * n;
    ImageBuffer out = ImageBuffer::make(w, h);
    out.maxval = image.maxval;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(x, y) = image.at(std::min(x, image.width - 1), std::min(y, image.height - 1));
    out.original_width = image.original_width;
    out.original_height = image.original_height;
    return out;
}

ImageBuffer crop(const ImageBuffer& image, int width, int height)
{
    if (width <= 0 || height <= 0 || width > image.width || height > image.height)
        throw UsageError("crop: target size must fit inside the image");
    ImageBuffer out = ImageBuffer::make(width, height);
    out.maxval = image.maxval;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            out.at(x, y) = image.at(x, y);
    return out;
}

ImageBuffer dct_round_trip(const ImageBuffer& image, const DctMatrix8& forward,
                           const DctMatrix8& inverse)
{
    ImageBuffer work = pad_to_multiple(image, 8);
    for (int by = 0; by < work.height; by += 8) {
        for (int bx = 0; bx < work.width; bx += 8) {
            Block8 block{};
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    block[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] =
                        work.at(bx + x, by + y) - 128.0;
            const Block8 back =
                transform_2d(transform_2d(block, forward, Direction::forward), inverse,
                             Direction::inverse);
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x) {
                    const double v = std::round(back[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] + 128.0);
                    work.at(bx + x, by + y) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
                }
        }
    }
    return crop(work, image.width, image.height);
}

} // namespace cordic
