#include "cordic/variants.hpp"

#include "cordic/errors.hpp"

#include <algorithm>
#include <bit>

namespace cordic {

LobResult lob_detect(std::uint16_t z)
{
    LobResult result;
    result.schedule.source = ScheduleSource::lobd;
    int stage = 1;
    while (z != 0) {
        const int position = std::bit_width(z) - 1;
        const auto bit = static_cast<std::uint16_t>(1u << position);
        const auto z_out = static_cast<std::uint16_t>(z & ~bit);
        const int shift = 16 - position;
        result.trace.stages.push_back({stage, z, position, shift, z_out});
        result.schedule.entries.push_back({shift, 1, FixedWord::from_raw(bit, kAngleQ16)});
        z = z_out;
        ++stage;
    }
    return result;
}

LobResult lob_detect(const FixedWord& z)
{
    if (z.format().frac_bits != 16)
        throw UsageError("lob_detect: angle word must have 16 fractional bits, got " +
                         z.format().name());
    if (z.raw() < 0)
        throw DomainError("lob_detect: scale-free rotation is anticlockwise only (z >= 0)");
    if (z.raw() > 0xFFFF)
        throw RangeError("lob_detect: angle exceeds the 16-bit word");
    return lob_detect(static_cast<std::uint16_t>(z.raw()));
}

RotationOutcome scale_free_rotate(const FixedWord& theta, const Vec2& v, ScaleFreeOptions options)
{
    if (!(v.x.format() == v.y.format()))
        throw UsageError("scale_free_rotate: x and y formats differ");
    LobResult lob = lob_detect(theta);

    RotationOutcome out;
    out.schedule = lob.schedule;
    FixedWord x = v.x;
    FixedWord y = v.y;
    for (const auto& entry : lob.schedule.entries) {
        const int i = entry.index;
        if (i < options.min_start_shift)
            throw DomainError("scale-free: stage shift " + std::to_string(i) +
                              " is below the minimum start index " +
                              std::to_string(options.min_start_shift) +
                              " (angle outside the small-angle region of convergence)");
        // cos ~ 1 - t^2/2, sin ~ t - t^3/6 with t = 2^-i and 1/6 ~ 2^-3 + 2^-5.
        const FixedWord x_c = fx_sub(x, fx_shr_floor(x, 2 * i + 1));
        const FixedWord y_c = fx_sub(y, fx_shr_floor(y, 2 * i + 1));
        const FixedWord x_s = fx_sub(fx_shr_floor(x, i),
                                     fx_add(fx_shr_floor(x, 3 * i + 3), fx_shr_floor(x, 3 * i + 5)));
        const FixedWord y_s = fx_sub(fx_shr_floor(y, i),
                                     fx_add(fx_shr_floor(y, 3 * i + 3), fx_shr_floor(y, 3 * i + 5)));
        x = fx_sub(x_c, y_s);
        y = fx_add(y_c, x_s);
        out.ops.adds += 8;
        out.ops.shifts += 8;
        out.ops.iterations += 1;
    }
    out.v = {x, y};
    out.raw_x = x.value();
    out.raw_y = y.value();
    out.k = 1.0L;
    if (!lob.schedule.entries.empty())
        out.worst_stage_shift = lob.schedule.entries.front().index;
    out.status = Status::converged;
    return out;
}

} // namespace cordic
