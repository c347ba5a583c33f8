#pragma once

// Two's-complement Q-format arithmetic. Every CORDIC datapath in this library
// is expressed in terms of these operations so that traces are bit-exact and
// reproducible across platforms.
//
// Conventions:
//   - real -> fixed conversion rounds half away from zero and rejects values
//     outside the format (no silent wrap);
//   - right shifts are arithmetic (floor toward -inf), the only truncation rule
//     used by the engines;
//   - add/sub/neg/mul saturate and set a sticky overflow flag on the result.

#include <cstdint>
#include <string>

namespace cordic {

struct QFormat {
    int total_bits = 16;
    int frac_bits = 14;

    // Validating constructor; throws UsageError unless 8 <= total <= 64 and
    // 0 <= frac < total.
    static QFormat make(int total_bits, int frac_bits);

    // Parses "qI.F" (case-insensitive), e.g. "q2.14" -> 16 bits, 14 fractional.
    static QFormat parse(const std::string& text);

    int int_bits() const noexcept { return total_bits - frac_bits; }
    std::int64_t max_raw() const noexcept;
    std::int64_t min_raw() const noexcept;
    long double ulp() const noexcept;
    long double max_value() const noexcept;
    long double min_value() const noexcept;
    std::string name() const;

    friend bool operator==(const QFormat&, const QFormat&) = default;
};

// Coordinate default: 16-bit word, two integer bits (covers the ~1.647 CORDIC
// gain on unit vectors).
inline constexpr QFormat kQ2_14{16, 14};
// Scale-free angle words are 16 fractional bits of radians; the extra sign bit
// keeps frac_bits < total_bits.
inline constexpr QFormat kAngleQ16{17, 16};

class FixedWord {
public:
    FixedWord() = default;

    // Throws RangeError if raw does not fit fmt.
    static FixedWord from_raw(std::int64_t raw, QFormat fmt);
    // Throws RangeError if the rounded value does not fit fmt.
    static FixedWord from_real(long double value, QFormat fmt);
    static FixedWord zero(QFormat fmt) { return from_raw(0, fmt); }
    static FixedWord max(QFormat fmt) { return from_raw(fmt.max_raw(), fmt); }
    static FixedWord min(QFormat fmt) { return from_raw(fmt.min_raw(), fmt); }

    std::int64_t raw() const noexcept { return raw_; }
    const QFormat& format() const noexcept { return fmt_; }
    bool overflow() const noexcept { return overflow_; }

    // Exact: raw * 2^-frac_bits.
    long double value() const noexcept;
    double to_double() const noexcept { return static_cast<double>(value()); }

    FixedWord with_overflow(bool flag) const noexcept;

    friend bool operator==(const FixedWord& a, const FixedWord& b) noexcept {
        return a.raw_ == b.raw_ && a.fmt_ == b.fmt_;
    }

private:
    FixedWord(std::int64_t raw, QFormat fmt, bool overflow)
        : raw_(raw), fmt_(fmt), overflow_(overflow) {}

    friend FixedWord saturate(__int128 raw, QFormat fmt, bool sticky);

    std::int64_t raw_ = 0;
    QFormat fmt_{};
    bool overflow_ = false;
};

// Clamps an unbounded result into fmt; the flag is set if clamping happened or
// `sticky` was already set.
FixedWord saturate(__int128 raw, QFormat fmt, bool sticky);

FixedWord fx_convert(long double value, QFormat fmt);
long double fx_convert(const FixedWord& word);

enum class ArithOp { add, sub, neg };

// neg ignores b (pass any word of the same format, or use fx_neg).
FixedWord fx_arith(const FixedWord& a, const FixedWord& b, ArithOp op);
FixedWord fx_add(const FixedWord& a, const FixedWord& b);
FixedWord fx_sub(const FixedWord& a, const FixedWord& b);
FixedWord fx_neg(const FixedWord& a);

// Arithmetic right shift, 0 <= shift < total_bits.
FixedWord fx_shr(const FixedWord& a, int shift);

// floor(a / 2^shift) for any shift >= 0. Counts past the word width collapse to
// the sign fill, which is what fx_shr by total_bits-1 already yields.
FixedWord fx_shr_floor(const FixedWord& a, int shift);

// Double-width product, floor shift by frac_bits, saturate.
FixedWord fx_mul(const FixedWord& a, const FixedWord& b);

// Moves a word into another format: widening is exact, dropping fractional bits
// floors, and out-of-range results saturate.
FixedWord fx_resize(const FixedWord& a, QFormat to);

FixedWord fx_abs(const FixedWord& a);

} // namespace cordic
