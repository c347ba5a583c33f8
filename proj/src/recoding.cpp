#include "cordic/variants.hpp"

#include "cordic/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace cordic {

namespace {

using CacheKey = std::tuple<long double, int, int, int>;

struct ScheduleCache {
    std::shared_mutex mutex;
    std::map<CacheKey, MicroRotationSchedule> entries;
};

ScheduleCache& cache()
{
    static ScheduleCache c;
    return c;
}

MicroRotationSchedule recode(long double theta, int n_bits, QFormat fmt)
{
    MicroRotationSchedule schedule;
    schedule.source = ScheduleSource::recoding;
    const long double target = std::ldexp(1.0L, -n_bits);
    long double residual = theta;
    while (std::fabs(residual) >= target && static_cast<int>(schedule.entries.size()) < n_bits) {
        int best_i = 0;
        int best_sigma = 1;
        long double best = INFINITY;
        for (int i = 0; i < n_bits; ++i) {
            const long double a = elementary_angle_exact(Trajectory::circular, i);
            for (int sigma : {1, -1}) {
                const long double r = std::fabs(residual - sigma * a);
                if (r < best) {
                    best = r;
                    best_i = i;
                    best_sigma = sigma;
                }
            }
        }
        if (best >= std::fabs(residual))
            break;
        const long double a = elementary_angle_exact(Trajectory::circular, best_i);
        residual -= best_sigma * a;
        schedule.entries.push_back(
            {best_i, best_sigma, FixedWord::from_real(best_sigma * a, fmt)});
    }
    return schedule;
}

} // namespace

MicroRotationSchedule angle_recode_greedy(long double theta, int n_bits, QFormat fmt)
{
    if (n_bits < 1 || n_bits > fmt.total_bits)
        throw UsageError("angle recoding: bit accuracy must be 1.." + std::to_string(fmt.total_bits));
    if (!std::isfinite(theta))
        throw RangeError("angle recoding: non-finite angle");

    const CacheKey key{theta, n_bits, fmt.total_bits, fmt.frac_bits};
    auto& c = cache();
    {
        std::shared_lock lock(c.mutex);
        if (auto it = c.entries.find(key); it != c.entries.end())
            return it->second;
    }
    MicroRotationSchedule schedule = recode(theta, n_bits, fmt);
    std::unique_lock lock(c.mutex);
    c.entries.emplace(key, schedule);
    return schedule;
}

long double recoding_residual(long double theta, const MicroRotationSchedule& schedule)
{
    long double residual = theta;
    for (const auto& e : schedule.entries)
        residual -= e.sigma * elementary_angle_exact(Trajectory::circular, e.index);
    return residual;
}

RotationOutcome recoding_rotate(const EngineConfig& config, const FixedWord& theta, const Vec2& v)
{
    config.validate();
    if (!(theta.format() == config.fmt) || !(v.x.format() == config.fmt) ||
        !(v.y.format() == config.fmt))
        throw UsageError("recoding_rotate: operands must use the engine format");

    const int n_bits = std::min(config.fmt.frac_bits, config.fmt.total_bits - 1);
    RotationOutcome out;
    out.schedule = angle_recode_greedy(theta.value(), n_bits, config.fmt);

    CordicState state{v.x, v.y, FixedWord::zero(config.fmt), 0};
    for (const auto& e : out.schedule.entries) {
        state = micro_rotate(state, e.sigma, Trajectory::circular, e.index);
        // The schedule is precomputed: no z datapath.
        out.ops.adds += 2;
        out.ops.shifts += 2;
        out.ops.iterations += 1;
    }
    out.status = std::fabs(recoding_residual(theta.value(), out.schedule)) <
                         std::ldexp(1.0L, -n_bits)
                     ? Status::converged
                     : Status::budget_exhausted;
    out.raw_x = state.x.value();
    out.raw_y = state.y.value();
    FixedWord x = state.x;
    FixedWord y = state.y;
    if (config.scale_correction && !out.schedule.entries.empty()) {
        out.k = scale_factor(out.schedule);
        const FixedWord kq = FixedWord::from_real(out.k, config.fmt);
        x = fx_mul(x, kq);
        y = fx_mul(y, kq);
        out.ops.multiplies += 2;
    }
    out.v = {x, y};
    return out;
}

} // namespace cordic
