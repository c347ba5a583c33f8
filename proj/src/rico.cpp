#include "cordic/variants.hpp"

#include "cordic/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace cordic {

namespace {

constexpr long double kPrerotationDeg = 7.0L;
constexpr int kHeadSteps = 3;

} // namespace

RicoConfig RicoConfig::make(QFormat fmt, int total_iterations)
{
    if (total_iterations < kHeadSteps || total_iterations > fmt.total_bits)
        throw UsageError("rico: total iterations must be " + std::to_string(kHeadSteps) + ".." +
                         std::to_string(fmt.total_bits));
    RicoConfig c;
    c.fmt = fmt;
    c.total_iterations = total_iterations;
    const long double step = kPrerotationDeg * std::numbers::pi_v<long double> / 180.0L;
    c.prerotation_angle = FixedWord::from_real(step, fmt);

    // IV(1, 0) turned twice by 7 degrees (either way), then pushed through every
    // direction combination of iterations 0..2 in exact arithmetic.
    for (int dir = 0; dir < 2; ++dir) {
        const long double pre = (dir == 0 ? 2.0L : -2.0L) * step;
        for (unsigned bits = 0; bits < 8; ++bits) {
            long double x = std::cos(pre);
            long double y = std::sin(pre);
            for (int i = 0; i < kHeadSteps; ++i) {
                const long double s = (bits & (1u << i)) ? 1.0L : -1.0L;
                const long double t = s * std::ldexp(1.0L, -i);
                const long double nx = x - t * y;
                const long double ny = y + t * x;
                x = nx;
                y = ny;
            }
            c.merged_head[dir][bits] = {FixedWord::from_real(x, fmt), FixedWord::from_real(y, fmt)};
        }
    }
    return c;
}

RotationOutcome rico_rotate(const FixedWord& theta, const RicoConfig& config)
{
    const QFormat fmt = config.fmt;
    if (!(theta.format() == fmt))
        throw UsageError("rico_rotate: angle must use the configured format");
    const int n = config.total_iterations;

    RotationOutcome out;
    out.schedule.source = ScheduleSource::conventional;

    // Pre-rotation by 2 x 7 degrees toward theta; the sigma generator sees the rest.
    const int dir = theta.raw() >= 0 ? 0 : 1;
    const FixedWord pre = fx_add(config.prerotation_angle, config.prerotation_angle);
    FixedWord z = dir == 0 ? fx_sub(theta, pre) : fx_add(theta, pre);
    out.ops.adds += 1;

    std::vector<int> sigmas;
    sigmas.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int sigma = z.raw() >= 0 ? 1 : -1;
        const FixedWord e = elementary_angle(Trajectory::circular, i, fmt);
        const FixedWord step = sigma > 0 ? e : fx_neg(e);
        z = fx_sub(z, step);
        sigmas.push_back(sigma);
        out.schedule.entries.push_back({i, sigma, step});
    }
    out.ops.adds += n;

    unsigned bits = 0;
    for (int i = 0; i < kHeadSteps; ++i)
        if (sigmas[static_cast<std::size_t>(i)] > 0)
            bits |= 1u << i;
    const Vec2 head = config.merged_head[dir][bits];
    out.ops.iterations += 1;

    CordicState state{head.x, head.y, FixedWord::zero(fmt), kHeadSteps};
    for (int i = kHeadSteps; i < n; ++i) {
        state = micro_rotate(state, sigmas[static_cast<std::size_t>(i)], Trajectory::circular, i);
        out.ops.adds += 2;
        out.ops.shifts += 2;
        out.ops.iterations += 1;
    }

    // Fixed latency: the final residual is reported, never iterated on.
    const long double bound =
        elementary_angle(Trajectory::circular, n - 1, fmt).value() + fmt.ulp() * n;
    out.status = std::fabs(z.value()) <= bound ? Status::converged : Status::budget_exhausted;

    FixedWord x = state.x;
    FixedWord y = state.y;
    out.raw_x = x.value();
    out.raw_y = y.value();
    out.k = scale_factor(n);
    const FixedWord kq = FixedWord::from_real(out.k, fmt);
    out.v = {fx_mul(x, kq), fx_mul(y, kq)};
    out.ops.multiplies += 2;
    return out;
}

} // namespace cordic
