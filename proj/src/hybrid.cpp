#include "cordic/variants.hpp"

#include "cordic/errors.hpp"

#include <cstdlib>

namespace cordic {

HybridConfig HybridConfig::defaults(QFormat fmt)
{
    return {(fmt.total_bits + 2) / 3, fmt.total_bits};
}

void HybridConfig::validate() const
{
    if (m <= 0 || m >= total_bits)
        throw UsageError("hybrid: split point m must satisfy 0 < m < " + std::to_string(total_bits));
}

MicroRotationSchedule hybrid_fine_digits(const FixedWord& residual, int first, int last)
{
    if (first < 0 || last < first)
        throw UsageError("hybrid_fine_digits: need 0 <= first <= last");
    const QFormat fmt = residual.format();
    const int f = fmt.frac_bits;
    auto weight = [f](int i) -> std::int64_t { return i <= f ? std::int64_t{1} << (f - i) : 0; };

    MicroRotationSchedule schedule;
    schedule.source = ScheduleSource::hybrid;
    const int sign = residual.raw() < 0 ? -1 : 1;
    std::int64_t mag = std::llabs(residual.raw());

    std::int64_t capacity = 0;
    for (int i = first; i <= last; ++i)
        capacity += weight(i);
    if (mag > capacity && weight(first) > 0) {
        schedule.entries.push_back(
            {first, sign, FixedWord::from_raw(sign * weight(first), fmt)});
        mag -= weight(first);
    }
    mag = std::min(mag, capacity);

    for (int i = first; i <= last; ++i) {
        const std::int64_t w = weight(i);
        const int sigma = (w > 0 && (mag & w)) ? sign : 0;
        schedule.entries.push_back({i, sigma, FixedWord::from_raw(sigma * w, fmt)});
    }
    return schedule;
}

RotationOutcome hybrid_rotate(const EngineConfig& config, const FixedWord& theta, const Vec2& v,
                              HybridConfig hybrid, HybridFlavor flavor)
{
    config.validate();
    hybrid.validate();
    if (!(theta.format() == config.fmt) || !(v.x.format() == config.fmt) ||
        !(v.y.format() == config.fmt))
        throw UsageError("hybrid_rotate: operands must use the engine format");
    const int n = config.max_iterations;
    const int m = hybrid.m;
    if (m >= n)
        throw UsageError("hybrid_rotate: split point m = " + std::to_string(m) +
                         " leaves no fine iterations out of " + std::to_string(n));

    RotationOutcome out;
    out.schedule.source = ScheduleSource::hybrid;
    const QFormat fmt = config.fmt;

    // Partitioned: the coarse block only sees the bits at weight 2^-m and above;
    // the low part bypasses it and joins the coarse residual.
    FixedWord coarse_in = theta;
    FixedWord low = FixedWord::zero(fmt);
    if (flavor == HybridFlavor::partitioned && m < fmt.frac_bits) {
        const std::int64_t mask = (std::int64_t{1} << (fmt.frac_bits - m)) - 1;
        low = FixedWord::from_raw(theta.raw() & mask, fmt);
        coarse_in = FixedWord::from_raw(theta.raw() - low.raw(), fmt);
    }

    CordicState state{v.x, v.y, coarse_in, 0};
    for (int i = 0; i < m; ++i) {
        const int sigma = sigma_select(Mode::rotation, state);
        const FixedWord before = state.z;
        state = micro_rotate(state, sigma, Trajectory::circular, i);
        out.schedule.entries.push_back({i, sigma, fx_sub(before, state.z)});
        // Partitioned coarse directions come from a table on the high bits.
        out.ops.adds += flavor == HybridFlavor::mixed ? 3 : 2;
        out.ops.shifts += 2;
        out.ops.iterations += 1;
    }

    FixedWord residual = state.z;
    if (flavor == HybridFlavor::partitioned) {
        residual = fx_add(residual, low);
        out.ops.adds += 1;
    }

    const MicroRotationSchedule fine = hybrid_fine_digits(residual, m, n - 1);
    std::int64_t left = residual.raw();
    for (const auto& e : fine.entries) {
        out.schedule.entries.push_back(e);
        left -= e.angle.raw();
        if (e.sigma == 0)
            continue;
        state = micro_rotate(state, e.sigma, Trajectory::circular, e.index);
        out.ops.adds += 2;
        out.ops.shifts += 2;
        out.ops.iterations += 1;
    }
    out.status = std::llabs(left) <= config.z_epsilon.raw() ? Status::converged
                                                            : Status::budget_exhausted;

    FixedWord x = state.x;
    FixedWord y = state.y;
    out.raw_x = x.value();
    out.raw_y = y.value();
    if (config.scale_correction && out.schedule.active_count() > 0) {
        out.k = scale_factor(out.schedule);
        const FixedWord kq = FixedWord::from_real(out.k, fmt);
        x = fx_mul(x, kq);
        y = fx_mul(y, kq);
        out.ops.multiplies += 2;
    }
    out.v = {x, y};
    return out;
}

} // namespace cordic
