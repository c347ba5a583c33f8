#include "cordic/fixnum.hpp"

#include "cordic/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>

namespace cordic {

QFormat QFormat::make(int total_bits, int frac_bits)
{
    if (total_bits < 8 || total_bits > 64)
        throw UsageError("word width must be 8..64 bits, got " + std::to_string(total_bits));
    if (frac_bits < 0 || frac_bits >= total_bits)
        throw UsageError("fractional bits must satisfy 0 <= frac < total, got " +
                         std::to_string(frac_bits) + " of " + std::to_string(total_bits));
    return QFormat{total_bits, frac_bits};
}

QFormat QFormat::parse(const std::string& text)
{
    auto fail = [&] { return UsageError("bad format '" + text + "', expected qI.F (e.g. q2.14)"); };
    if (text.size() < 4 || std::tolower(static_cast<unsigned char>(text[0])) != 'q')
        throw fail();
    const auto dot = text.find('.');
    if (dot == std::string::npos)
        throw fail();
    int int_bits = 0;
    int frac_bits = 0;
    const char* begin = text.data() + 1;
    const char* mid = text.data() + dot;
    const char* end = text.data() + text.size();
    auto r1 = std::from_chars(begin, mid, int_bits);
    auto r2 = std::from_chars(mid + 1, end, frac_bits);
    if (r1.ec != std::errc{} || r1.ptr != mid || r2.ec != std::errc{} || r2.ptr != end)
        throw fail();
    return make(int_bits + frac_bits, frac_bits);
}

std::int64_t QFormat::max_raw() const noexcept
{
    return static_cast<std::int64_t>((static_cast<unsigned __int128>(1) << (total_bits - 1)) - 1);
}

std::int64_t QFormat::min_raw() const noexcept
{
    return -max_raw() - 1;
}

long double QFormat::ulp() const noexcept
{
    return std::ldexp(1.0L, -frac_bits);
}

long double QFormat::max_value() const noexcept
{
    return std::ldexp(static_cast<long double>(max_raw()), -frac_bits);
}

long double QFormat::min_value() const noexcept
{
    return std::ldexp(static_cast<long double>(min_raw()), -frac_bits);
}

std::string QFormat::name() const
{
    return "q" + std::to_string(int_bits()) + "." + std::to_string(frac_bits);
}

FixedWord saturate(__int128 raw, QFormat fmt, bool sticky)
{
    const __int128 hi = fmt.max_raw();
    const __int128 lo = fmt.min_raw();
    if (raw > hi)
        return FixedWord(static_cast<std::int64_t>(hi), fmt, true);
    if (raw < lo)
        return FixedWord(static_cast<std::int64_t>(lo), fmt, true);
    return FixedWord(static_cast<std::int64_t>(raw), fmt, sticky);
}

FixedWord FixedWord::from_raw(std::int64_t raw, QFormat fmt)
{
    if (raw > fmt.max_raw() || raw < fmt.min_raw())
        throw RangeError("raw value " + std::to_string(raw) + " does not fit " + fmt.name());
    return FixedWord(raw, fmt, false);
}

FixedWord FixedWord::from_real(long double value, QFormat fmt)
{
    if (!std::isfinite(value))
        throw RangeError("non-finite value cannot be converted to " + fmt.name());
    const long double scaled = std::ldexp(value, fmt.frac_bits);
    // roundl: half away from zero.
    const long double rounded = std::roundl(scaled);
    if (rounded > static_cast<long double>(fmt.max_raw()) ||
        rounded < static_cast<long double>(fmt.min_raw()))
        throw RangeError("value " + std::to_string(static_cast<double>(value)) +
                         " outside the range of " + fmt.name());
    return FixedWord(static_cast<std::int64_t>(rounded), fmt, false);
}

long double FixedWord::value() const noexcept
{
    return std::ldexp(static_cast<long double>(raw_), -fmt_.frac_bits);
}

FixedWord FixedWord::with_overflow(bool flag) const noexcept
{
    return FixedWord(raw_, fmt_, flag);
}

FixedWord fx_convert(long double value, QFormat fmt)
{
    return FixedWord::from_real(value, fmt);
}

long double fx_convert(const FixedWord& word)
{
    return word.value();
}

namespace {

void require_same_format(const FixedWord& a, const FixedWord& b, const char* op)
{
    if (!(a.format() == b.format()))
        throw UsageError(std::string(op) + ": format mismatch (" + a.format().name() + " vs " +
                         b.format().name() + ")");
}

} // namespace

FixedWord fx_arith(const FixedWord& a, const FixedWord& b, ArithOp op)
{
    require_same_format(a, b, "fx_arith");
    const bool sticky = a.overflow() || (op != ArithOp::neg && b.overflow());
    const __int128 ra = a.raw();
    const __int128 rb = b.raw();
    switch (op) {
    case ArithOp::add:
        return saturate(ra + rb, a.format(), sticky);
    case ArithOp::sub:
        return saturate(ra - rb, a.format(), sticky);
    case ArithOp::neg:
        return saturate(-ra, a.format(), a.overflow());
    }
    throw UsageError("fx_arith: unknown op");
}

FixedWord fx_add(const FixedWord& a, const FixedWord& b)
{
    return fx_arith(a, b, ArithOp::add);
}

FixedWord fx_sub(const FixedWord& a, const FixedWord& b)
{
    return fx_arith(a, b, ArithOp::sub);
}

FixedWord fx_neg(const FixedWord& a)
{
    return fx_arith(a, a, ArithOp::neg);
}

FixedWord fx_shr(const FixedWord& a, int shift)
{
    if (shift < 0 || shift >= a.format().total_bits)
        throw UsageError("fx_shr: shift " + std::to_string(shift) + " outside [0, " +
                         std::to_string(a.format().total_bits) + ")");
    // >> on a negative signed value is arithmetic (floor) since C++20.
    return saturate(a.raw() >> shift, a.format(), a.overflow());
}

FixedWord fx_shr_floor(const FixedWord& a, int shift)
{
    if (shift < 0)
        throw UsageError("fx_shr_floor: negative shift");
    return fx_shr(a, std::min(shift, a.format().total_bits - 1));
}

FixedWord fx_mul(const FixedWord& a, const FixedWord& b)
{
    require_same_format(a, b, "fx_mul");
    const __int128 product = static_cast<__int128>(a.raw()) * b.raw();
    return saturate(product >> a.format().frac_bits, a.format(), a.overflow() || b.overflow());
}

FixedWord fx_resize(const FixedWord& a, QFormat to)
{
    const int delta = to.frac_bits - a.format().frac_bits;
    __int128 raw = a.raw();
    if (delta >= 0)
        raw <<= delta;
    else
        raw >>= -delta;
    return saturate(raw, to, a.overflow());
}

FixedWord fx_abs(const FixedWord& a)
{
    return a.raw() < 0 ? fx_neg(a) : a;
}

} // namespace cordic
