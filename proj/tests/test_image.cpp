#include "cordic/dct.hpp"
#include "cordic/errors.hpp"
#include "cordic/functions.hpp"
#include "cordic/image.hpp"
#include "cordic/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

using namespace cordic;

namespace {

const std::filesystem::path kFixtures{FIXTURE_DIR};

std::vector<std::uint8_t> bytes_of(const std::string& text)
{
    return {text.begin(), text.end()};
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double reference_mse(const ImageBuffer& a, const ImageBuffer& b)
{
    long double s = 0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x) {
            const long double d = static_cast<long double>(a.at(x, y)) - b.at(x, y);
            s += d * d;
        }
    return static_cast<double>(s / (static_cast<long double>(a.width) * a.height));
}

} // namespace

TEST_SUITE("image")
{
    TEST_CASE("PGM round trip keeps the payload")
    {
        const auto raw = read_file(kFixtures / "gradient8.pgm");
        const auto img = parse_pgm(raw);
        CHECK(img.width == 8);
        CHECK(img.height == 8);
        CHECK(img.maxval == 255);
        const auto again = encode_pgm(img);
        REQUIRE(again.size() >= 64);
        CHECK(std::equal(raw.end() - 64, raw.end(), again.end() - 64));
        CHECK(parse_pgm(again).samples == img.samples);
    }

    TEST_CASE("PGM header comments and whitespace")
    {
        const auto img = parse_pgm(bytes_of("P5 # a comment\n 2\t1\n#x\n255\n\x01\x02"));
        CHECK(img.width == 2);
        CHECK(img.height == 1);
        CHECK(img.samples == std::vector<std::uint8_t>{1, 2});
    }

    TEST_CASE("malformed PGM input")
    {
        auto raw = read_file(kFixtures / "gradient8.pgm");
        raw.resize(raw.size() - 5);
        try {
            parse_pgm(raw);
            FAIL("truncated file accepted");
        } catch (const ParseError& e) {
            CHECK(e.offset() == raw.size());
            CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
        }
        try {
            parse_pgm(bytes_of("P2\n2 1\n255\n1 2\n"));
            FAIL("ASCII PGM accepted");
        } catch (const ParseError& e) {
            CHECK(e.offset() == 0);
            CHECK(std::string(e.what()).find("unsupported") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_pgm(bytes_of("P5\n2 x\n255\n")), ParseError);
        CHECK_THROWS_AS(parse_pgm(bytes_of("P5\n0 1\n255\n")), ParseError);
        CHECK_THROWS_AS(parse_pgm(bytes_of("P5\n1 1\n65535\n\x01\x02")), ParseError);
        CHECK_THROWS_AS(parse_pgm(bytes_of("P5\n2 1\n100\n\x01\xFF")), ParseError);
        CHECK_THROWS_AS(parse_pgm(bytes_of("P")), ParseError);
    }

    TEST_CASE("file errors")
    {
        CHECK_THROWS_AS(read_pgm(kFixtures / "does-not-exist.pgm"), IoError);
        CHECK_THROWS_AS(write_pgm("/nonexistent-dir/out.pgm", ImageBuffer::make(8, 8)), IoError);
        const auto tmp = std::filesystem::temp_directory_path() / "cordic_image_test.pgm";
        const auto img = read_pgm(kFixtures / "noise.pgm");
        write_pgm(tmp, img);
        CHECK(read_pgm(tmp).samples == img.samples);
        std::filesystem::remove(tmp);
    }

    TEST_CASE("padding by edge replication")
    {
        auto img = ImageBuffer::make(9, 9);
        for (int y = 0; y < 9; ++y)
            for (int x = 0; x < 9; ++x)
                img.at(x, y) = static_cast<std::uint8_t>(10 * y + x);
        const auto p = pad_to_multiple(img, 8);
        CHECK(p.width == 16);
        CHECK(p.height == 16);
        CHECK(p.original_width == 9);
        CHECK(p.original_height == 9);
        CHECK(p.padded());
        CHECK(p.at(15, 3) == img.at(8, 3));
        CHECK(p.at(2, 15) == img.at(2, 8));
        CHECK(p.at(15, 15) == img.at(8, 8));
        const auto c = crop(p, p.original_width, p.original_height);
        CHECK(c.samples == img.samples);
        CHECK_FALSE(c.padded());
        CHECK_THROWS_AS(crop(img, 10, 9), UsageError);
    }

    TEST_CASE("MSE and PSNR against a per-pixel reference")
    {
        std::mt19937 rng(6);
        std::uniform_int_distribution<int> d(0, 255);
        for (int n = 0; n < 20; ++n) {
            auto a = ImageBuffer::make(13, 7);
            auto b = ImageBuffer::make(13, 7);
            for (std::size_t i = 0; i < a.samples.size(); ++i) {
                a.samples[i] = static_cast<std::uint8_t>(d(rng));
                b.samples[i] = static_cast<std::uint8_t>(std::clamp(a.samples[i] + d(rng) % 9 - 4, 0, 255));
            }
            const double m = mse(a, b);
            const double ref = reference_mse(a, b);
            CHECK(std::fabs(m - ref) <= 1e-9);
            if (ref > 0)
                CHECK(std::fabs(psnr(m) - 10.0 * std::log10(65025.0 / ref)) <= 1e-9);
        }
        CHECK(std::isinf(psnr(0.0)));
        CHECK(format_metric(psnr(0.0)) == "inf");
        CHECK(format_metric(1.5) == "1.500000");
        CHECK_THROWS_AS(mse(ImageBuffer::make(8, 8), ImageBuffer::make(8, 9)), UsageError);
    }

    TEST_CASE("black image survives every variant")
    {
        const auto black = read_pgm(kFixtures / "black.pgm");
        const auto exact = DctMatrix8::exact();
        for (const auto& src : all_dct_sources()) {
            const auto m = build_matrix(dct_coefficients(src, default_engine()));
            CAPTURE(to_string(src));
            CHECK(mse(black, dct_round_trip(black, m, exact)) == 0.0);
        }
    }

    TEST_CASE("fixture pipeline")
    {
        const auto exact = DctMatrix8::exact();
        const auto conv = build_matrix(dct_coefficients(Variant::conventional, default_engine()));
        for (const char* name : {"gradient8.pgm", "gradient.pgm", "rings.pgm", "noise.pgm"}) {
            CAPTURE(name);
            const auto img = read_pgm(kFixtures / name);
            const auto same = dct_round_trip(img, exact, exact);
            CHECK(mse(img, same) == 0.0);
            CHECK(std::isinf(psnr(mse(img, same))));
            const auto approx = dct_round_trip(img, conv, exact);
            CHECK(approx.width == img.width);
            CHECK(approx.height == img.height);
            CHECK(psnr(mse(img, approx)) > 45.0);
        }
    }
}
