#include "cordic/variants.hpp"

#include "cordic/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace cordic {

namespace {

FixedWord radix4_angle(int sigma, int i, QFormat fmt)
{
    return FixedWord::from_real(std::atan(sigma * std::ldexp(1.0L, -2 * i)), fmt);
}

// s * 4^-i * w for s in {-2..2}; |s| = 2 is one shift less (or w + w at i = 0).
FixedWord radix4_term(const FixedWord& w, int sigma, int i, OpCount& ops)
{
    const int mag = std::abs(sigma);
    FixedWord t;
    if (mag == 1) {
        t = fx_shr_floor(w, 2 * i);
        ops.shifts += i > 0 ? 1 : 0;
    } else if (i == 0) {
        t = fx_add(w, w);
        ops.adds += 1;
    } else {
        t = fx_shr_floor(w, 2 * i - 1);
        ops.shifts += 1;
    }
    return sigma < 0 ? fx_neg(t) : t;
}

} // namespace

int radix4_select(const FixedWord& z, int i)
{
    static constexpr int kOrder[] = {0, 1, -1, 2, -2};
    int best = 0;
    __int128 best_err = -1;
    for (int sigma : kOrder) {
        const __int128 a = sigma == 0 ? 0 : radix4_angle(sigma, i, z.format()).raw();
        __int128 err = static_cast<__int128>(z.raw()) - a;
        if (err < 0)
            err = -err;
        if (best_err < 0 || err < best_err) {
            best_err = err;
            best = sigma;
        }
    }
    return best;
}

RotationOutcome radix4_rotate(const EngineConfig& config, const FixedWord& theta, const Vec2& v)
{
    config.validate();
    if (!(theta.format() == config.fmt) || !(v.x.format() == config.fmt) ||
        !(v.y.format() == config.fmt))
        throw UsageError("radix4_rotate: operands must use the engine format");

    // The first digit can grow the vector by sqrt(5); two guard bits on top.
    const int guard = std::min(2, 64 - config.fmt.total_bits);
    const QFormat wide{config.fmt.total_bits + guard, config.fmt.frac_bits};

    RotationOutcome out;
    out.schedule.source = ScheduleSource::radix4;
    FixedWord x = fx_resize(v.x, wide);
    FixedWord y = fx_resize(v.y, wide);
    FixedWord z = fx_neg(theta);

    for (int i = 0; i < config.max_iterations; ++i) {
        if (std::llabs(z.raw()) <= config.z_epsilon.raw())
            break;
        const int sigma = radix4_select(z, i);
        out.ops.iterations += 1;
        if (sigma == 0) {
            out.schedule.entries.push_back({i, 0, FixedWord::zero(config.fmt)});
            continue;
        }
        const FixedWord ty = radix4_term(y, sigma, i, out.ops);
        const FixedWord tx = radix4_term(x, sigma, i, out.ops);
        const FixedWord nx = fx_add(x, ty);
        const FixedWord ny = fx_sub(y, tx);
        x = nx;
        y = ny;
        const FixedWord alpha = radix4_angle(sigma, i, config.fmt);
        z = fx_sub(z, alpha);
        out.ops.adds += 3;
        out.schedule.entries.push_back({i, sigma, alpha});
    }
    out.status = std::llabs(z.raw()) <= config.z_epsilon.raw() ? Status::converged
                                                               : Status::budget_exhausted;
    out.raw_x = x.value();
    out.raw_y = y.value();
    if (config.scale_correction && out.schedule.active_count() > 0) {
        out.k = scale_factor(out.schedule);
        const FixedWord kq = FixedWord::from_real(out.k, wide);
        x = fx_mul(x, kq);
        y = fx_mul(y, kq);
        out.ops.multiplies += 2;
    }
    out.v = {fx_resize(x, config.fmt), fx_resize(y, config.fmt)};
    return out;
}

} // namespace cordic
