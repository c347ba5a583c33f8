#include "cordic/core.hpp"

#include "cordic/errors.hpp"

#include <array>
#include <cmath>

namespace cordic {

std::string to_string(ScheduleSource source)
{
    switch (source) {
    case ScheduleSource::conventional: return "conventional";
    case ScheduleSource::lobd: return "lobd";
    case ScheduleSource::recoding: return "recoding";
    case ScheduleSource::radix4: return "radix4";
    case ScheduleSource::hybrid: return "hybrid";
    }
    return "?";
}

std::size_t MicroRotationSchedule::active_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& e : entries)
        n += e.sigma != 0 ? 1 : 0;
    return n;
}

int curvature(Trajectory t) noexcept
{
    switch (t) {
    case Trajectory::circular: return 1;
    case Trajectory::linear: return 0;
    case Trajectory::hyperbolic: return -1;
    }
    return 1;
}

std::string to_string(Trajectory t)
{
    switch (t) {
    case Trajectory::circular: return "circular";
    case Trajectory::linear: return "linear";
    case Trajectory::hyperbolic: return "hyperbolic";
    }
    return "?";
}

std::string to_string(Mode m)
{
    return m == Mode::rotation ? "rotation" : "vectoring";
}

std::string to_string(Status s)
{
    return s == Status::converged ? "converged" : "budget_exhausted";
}

CordicState make_state(long double x, long double y, long double z, QFormat fmt)
{
    return CordicState{FixedWord::from_real(x, fmt), FixedWord::from_real(y, fmt),
                       FixedWord::from_real(z, fmt), 0};
}

EngineConfig EngineConfig::make(Mode mode, Trajectory trajectory, QFormat fmt, int max_iterations,
                                int epsilon_ulps)
{
    EngineConfig cfg;
    cfg.mode = mode;
    cfg.trajectory = trajectory;
    cfg.fmt = fmt;
    cfg.max_iterations = max_iterations;
    if (epsilon_ulps < 1)
        throw UsageError("epsilon must be at least one ulp");
    cfg.z_epsilon = FixedWord::from_raw(epsilon_ulps, fmt);
    cfg.y_epsilon = cfg.z_epsilon;
    cfg.validate();
    return cfg;
}

void EngineConfig::validate() const
{
    // Shift counts must stay inside the word; see fx_shr.
    if (max_iterations < 1 || max_iterations > fmt.total_bits)
        throw UsageError("iteration budget must be 1.." + std::to_string(fmt.total_bits) + " for " +
                         fmt.name() + ", got " + std::to_string(max_iterations));
    if (!(z_epsilon.format() == fmt) || !(y_epsilon.format() == fmt))
        throw UsageError("convergence thresholds must use the engine format");
    if (z_epsilon.raw() < 1 || y_epsilon.raw() < 1)
        throw UsageError("convergence thresholds must be at least one ulp");
}

namespace {

constexpr int kTableSize = 64;

struct AngleTables {
    std::array<long double, kTableSize> circular{};
    std::array<long double, kTableSize> linear{};
    std::array<long double, kTableSize> hyperbolic{};

    AngleTables()
    {
        for (int i = 0; i < kTableSize; ++i) {
            const long double t = std::ldexp(1.0L, -i);
            circular[i] = std::atan(t);
            linear[i] = t;
            hyperbolic[i] = i == 0 ? INFINITY : std::atanh(t);
        }
    }
};

const AngleTables& angle_tables()
{
    static const AngleTables tables;
    return tables;
}

bool converged(const EngineConfig& cfg, const CordicState& s)
{
    if (cfg.mode == Mode::rotation)
        return std::llabs(s.z.raw()) <= cfg.z_epsilon.raw();
    return std::llabs(s.y.raw()) <= cfg.y_epsilon.raw();
}

} // namespace

long double elementary_angle_exact(Trajectory t, int i)
{
    if (i < 0 || i >= kTableSize)
        throw UsageError("elementary angle index " + std::to_string(i) + " out of table");
    const auto& tables = angle_tables();
    switch (t) {
    case Trajectory::circular: return tables.circular[i];
    case Trajectory::linear: return tables.linear[i];
    case Trajectory::hyperbolic:
        if (i == 0)
            throw DomainError("hyperbolic elementary angle undefined at i = 0 (atanh(1) diverges)");
        return tables.hyperbolic[i];
    }
    return 0;
}

FixedWord elementary_angle(Trajectory t, int i, QFormat fmt)
{
    return FixedWord::from_real(elementary_angle_exact(t, i), fmt);
}

int sigma_select(Mode mode, const CordicState& state) noexcept
{
    if (mode == Mode::rotation)
        return state.z.raw() >= 0 ? 1 : -1;
    return state.y.raw() <= 0 ? 1 : -1;
}

CordicState micro_rotate(const CordicState& state, int sigma, Trajectory t, std::optional<int> shift)
{
    if (sigma != 1 && sigma != -1)
        throw UsageError("micro_rotate: sigma must be +1 or -1");
    const int i = shift.value_or(state.i);
    const int m = curvature(t);

    const FixedWord y_shifted = fx_shr(state.y, i);
    const FixedWord x_shifted = fx_shr(state.x, i);

    CordicState next = state;
    if (m * sigma > 0)
        next.x = fx_sub(state.x, y_shifted);
    else if (m * sigma < 0)
        next.x = fx_add(state.x, y_shifted);
    next.y = sigma > 0 ? fx_add(state.y, x_shifted) : fx_sub(state.y, x_shifted);

    const FixedWord e = elementary_angle(t, i, state.z.format());
    next.z = sigma > 0 ? fx_sub(state.z, e) : fx_add(state.z, e);
    next.i = state.i + 1;
    return next;
}

long double scale_factor(int n)
{
    if (n < 1)
        throw UsageError("scale_factor: n must be >= 1");
    long double k = 1.0L;
    for (int i = 0; i < n; ++i)
        k /= std::sqrt(1.0L + std::ldexp(1.0L, -2 * i));
    return k;
}

long double scale_factor(const MicroRotationSchedule& schedule, Trajectory t)
{
    long double k = 1.0L;
    for (const auto& e : schedule.entries) {
        if (e.sigma == 0)
            continue;
        if (schedule.source == ScheduleSource::radix4) {
            const long double s2 = static_cast<long double>(e.sigma) * e.sigma;
            k /= std::sqrt(1.0L + s2 * std::ldexp(1.0L, -4 * e.index));
            continue;
        }
        switch (t) {
        case Trajectory::circular:
            k /= std::sqrt(1.0L + std::ldexp(1.0L, -2 * e.index));
            break;
        case Trajectory::hyperbolic:
            k /= std::sqrt(1.0L - std::ldexp(1.0L, -2 * e.index));
            break;
        case Trajectory::linear:
            break;
        }
    }
    return k;
}

std::vector<int> shift_sequence(Trajectory t, int max_iterations)
{
    std::vector<int> seq;
    seq.reserve(static_cast<std::size_t>(std::max(max_iterations, 0)));
    if (t != Trajectory::hyperbolic) {
        for (int i = 0; i < max_iterations; ++i)
            seq.push_back(i);
        return seq;
    }
    for (int i = 1; static_cast<int>(seq.size()) < max_iterations; ++i) {
        seq.push_back(i);
        if ((i == 4 || i == 13 || i == 40) && static_cast<int>(seq.size()) < max_iterations)
            seq.push_back(i);
    }
    return seq;
}

RunResult run(const EngineConfig& config, const CordicState& init)
{
    config.validate();
    if (!(init.x.format() == config.fmt) || !(init.y.format() == config.fmt) ||
        !(init.z.format() == config.fmt))
        throw UsageError("run: initial state must use the engine format " + config.fmt.name());
    if (config.mode == Mode::vectoring && config.trajectory == Trajectory::hyperbolic &&
        std::llabs(init.y.raw()) >= std::llabs(init.x.raw()))
        throw DomainError("hyperbolic vectoring requires |y| < |x|");

    RunResult result;
    result.applied.source = ScheduleSource::conventional;
    CordicState state = init;
    state.i = 0;

    const int m = curvature(config.trajectory);
    for (int shift : shift_sequence(config.trajectory, config.max_iterations)) {
        if (converged(config, state))
            break;
        const int sigma = sigma_select(config.mode, state);
        const FixedWord before = state.z;
        state = micro_rotate(state, sigma, config.trajectory, shift);
        result.applied.entries.push_back({shift, sigma, fx_sub(before, state.z)});
        result.ops.adds += (m != 0 ? 2 : 1) + 1;
        result.ops.shifts += m != 0 ? 2 : 1;
        result.ops.iterations += 1;
    }
    result.status = converged(config, state) ? Status::converged : Status::budget_exhausted;
    result.raw_state = state;

    if (config.scale_correction && m != 0 && !result.applied.entries.empty()) {
        result.k = scale_factor(result.applied, config.trajectory);
        const FixedWord kq = FixedWord::from_real(result.k, config.fmt);
        state.x = fx_mul(state.x, kq);
        state.y = fx_mul(state.y, kq);
        result.ops.multiplies += 2;
    }
    result.state = state;
    return result;
}

} // namespace cordic
