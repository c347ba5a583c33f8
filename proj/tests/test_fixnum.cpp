#include "cordic/errors.hpp"
#include "cordic/fixnum.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cordic;

namespace {

// Round half away from zero on an exact dyadic value x = num / 2^den_bits.
std::int64_t oracle_round(std::int64_t num, int shift)
{
    // value = num * 2^-shift; round to integer.
    const std::int64_t mag = num < 0 ? -num : num;
    const std::int64_t q = mag >> shift;
    const std::int64_t rem = mag - (q << shift);
    const std::int64_t half = shift > 0 ? (std::int64_t{1} << (shift - 1)) : 0;
    const std::int64_t r = shift > 0 && rem >= half ? q + 1 : q;
    return num < 0 ? -r : r;
}

std::int64_t floor_div_pow2(std::int64_t v, int s)
{
    // Division rounding toward -inf, computed without shifts.
    const std::int64_t d = std::int64_t{1} << s;
    std::int64_t q = v / d;
    if (v % d != 0 && v < 0)
        --q;
    return q;
}

} // namespace

TEST_SUITE("fixnum")
{
    TEST_CASE("format parsing and limits")
    {
        const QFormat f = QFormat::parse("q2.14");
        CHECK(f.total_bits == 16);
        CHECK(f.frac_bits == 14);
        CHECK(f.int_bits() == 2);
        CHECK(f.max_raw() == 32767);
        CHECK(f.min_raw() == -32768);
        CHECK(f.name() == "q2.14");
        CHECK(QFormat::parse("Q4.28") == QFormat{32, 28});
        CHECK_THROWS_AS(QFormat::parse("2.14"), UsageError);
        CHECK_THROWS_AS(QFormat::parse("q2"), UsageError);
        CHECK_THROWS_AS(QFormat::parse("q2.x"), UsageError);
        CHECK_THROWS_AS(QFormat::make(4, 2), UsageError);
        CHECK_THROWS_AS(QFormat::make(16, 16), UsageError);
        CHECK_THROWS_AS(QFormat::make(65, 10), UsageError);
        CHECK(QFormat::make(64, 62).max_raw() == INT64_MAX);
    }

    TEST_CASE("real to fixed rounds half away from zero")
    {
        const QFormat f{16, 14};
        CHECK(FixedWord::from_real(0.5L, f).raw() == 8192);
        // 1.5 ulp and -1.5 ulp
        CHECK(FixedWord::from_real(1.5L * f.ulp(), f).raw() == 2);
        CHECK(FixedWord::from_real(-1.5L * f.ulp(), f).raw() == -2);
        CHECK(FixedWord::from_real(0.5L * f.ulp(), f).raw() == 1);
        CHECK(FixedWord::from_real(-0.5L * f.ulp(), f).raw() == -1);
        CHECK(FixedWord::from_real(0.49L * f.ulp(), f).raw() == 0);

        std::mt19937_64 rng(1);
        std::uniform_int_distribution<std::int64_t> d(-(1LL << 20), (1LL << 20));
        for (int n = 0; n < 2000; ++n) {
            // Dyadic values with 6 extra fractional bits below the ulp.
            const std::int64_t num = d(rng);
            const long double v = std::ldexp(static_cast<long double>(num), -20);
            CHECK(FixedWord::from_real(v, f).raw() == oracle_round(num, 6));
        }
    }

    TEST_CASE("out-of-range conversion is rejected, not wrapped")
    {
        const QFormat f{16, 14};
        CHECK_THROWS_AS(FixedWord::from_real(2.0L, f), RangeError);
        CHECK_THROWS_AS(FixedWord::from_real(-2.00004L, f), RangeError);
        CHECK(FixedWord::from_real(-2.0L, f).raw() == -32768);
        CHECK_THROWS_AS(FixedWord::from_real(NAN, f), RangeError);
        CHECK_THROWS_AS(FixedWord::from_raw(40000, f), RangeError);
        CHECK(FixedWord::from_real(1.25L, f).value() == 1.25L);
    }

    TEST_CASE("add/sub/neg saturate with a sticky flag")
    {
        const QFormat f{16, 14};
        const auto big = FixedWord::from_real(1.5L, f);
        const auto s = fx_add(big, big);
        CHECK(s.raw() == f.max_raw());
        CHECK(s.overflow());
        const auto t = fx_sub(fx_neg(big), big);
        CHECK(t.raw() == f.min_raw());
        CHECK(t.overflow());
        // The flag survives later in-range arithmetic.
        const auto u = fx_sub(s, big);
        CHECK(u.overflow());
        CHECK_FALSE(fx_add(big, fx_neg(big)).overflow());
        CHECK(fx_neg(FixedWord::min(f)).raw() == f.max_raw());
        CHECK(fx_neg(FixedWord::min(f)).overflow());
        CHECK_THROWS_AS(fx_add(big, FixedWord::from_real(1.0L, QFormat{16, 12})), UsageError);
    }

    TEST_CASE("right shift is floor division by a power of two")
    {
        const QFormat f{16, 14};
        std::mt19937 rng(2);
        std::uniform_int_distribution<std::int64_t> d(f.min_raw(), f.max_raw());
        for (int n = 0; n < 2000; ++n) {
            const auto w = FixedWord::from_raw(d(rng), f);
            for (int s = 0; s < 16; ++s)
                CHECK(fx_shr(w, s).raw() == floor_div_pow2(w.raw(), s));
        }
        const auto m1 = FixedWord::from_raw(-1, f);
        CHECK(fx_shr(m1, 5).raw() == -1);
        CHECK(fx_shr_floor(m1, 40).raw() == -1);
        CHECK(fx_shr_floor(FixedWord::from_raw(12345, f), 40).raw() == 0);
        CHECK_THROWS_AS(fx_shr(m1, 16), UsageError);
        CHECK_THROWS_AS(fx_shr(m1, -1), UsageError);
    }

    TEST_CASE("multiply floors the double-width product")
    {
        const QFormat f{16, 14};
        std::mt19937 rng(3);
        std::uniform_int_distribution<std::int64_t> d(-16384, 16383);
        for (int n = 0; n < 2000; ++n) {
            const auto a = FixedWord::from_raw(d(rng), f);
            const auto b = FixedWord::from_raw(d(rng), f);
            CHECK(fx_mul(a, b).raw() == floor_div_pow2(a.raw() * b.raw(), 14));
        }
        const auto x = FixedWord::from_real(1.9L, f);
        CHECK(fx_mul(x, x).overflow());
        CHECK(fx_mul(x, x).raw() == f.max_raw());
    }

    TEST_CASE("resize widens exactly and narrows by floor")
    {
        const QFormat narrow{16, 14};
        const QFormat wide{32, 28};
        const auto a = FixedWord::from_raw(-12345, narrow);
        const auto w = fx_resize(a, wide);
        CHECK(w.value() == a.value());
        CHECK(fx_resize(w, narrow) == a);
        const auto odd = FixedWord::from_raw(-3, QFormat{20, 16});
        CHECK(fx_resize(odd, narrow).raw() == -1); // floor(-3/4)
        CHECK(fx_resize(FixedWord::from_real(7.5L, QFormat{32, 16}), narrow).overflow());
    }

    TEST_CASE("value is exact")
    {
        const QFormat f{64, 60};
        const auto w = FixedWord::from_raw(INT64_MAX, f);
        CHECK(w.value() == std::ldexp(static_cast<long double>(INT64_MAX), -60));
        CHECK(fx_abs(FixedWord::from_raw(-5, f)).raw() == 5);
    }
}
