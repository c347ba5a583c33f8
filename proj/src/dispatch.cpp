#include "cordic/variants.hpp"

#include "cordic/errors.hpp"

#include <cmath>

namespace cordic {

namespace {

struct VariantName {
    Variant variant;
    const char* name;
};

constexpr VariantName kNames[] = {
    {Variant::conventional, "conventional"},
    {Variant::scale_free, "scale-free"},
    {Variant::lookahead, "lookahead"},
    {Variant::hybrid_mixed, "hybrid-mixed"},
    {Variant::hybrid_partitioned, "hybrid-partitioned"},
    {Variant::recoding, "recoding"},
    {Variant::radix4, "radix4"},
    {Variant::rico, "rico"},
};

RotationOutcome from_run(const RunResult& r)
{
    RotationOutcome out;
    out.v = {r.state.x, r.state.y};
    out.raw_x = r.raw_state.x.value();
    out.raw_y = r.raw_state.y.value();
    out.k = r.k;
    out.ops = r.ops;
    out.status = r.status;
    out.schedule = r.applied;
    return out;
}

RotationOutcome rotate_scale_free(const EngineConfig& config, long double theta, long double x0,
                                  long double y0)
{
    // Anticlockwise only: a clockwise turn is the mirror image of an
    // anticlockwise one, so conjugate on the way in and out.
    const bool mirror = theta < 0;
    const long double mag = std::fabs(theta);
    if (mag >= 1.0L)
        throw DomainError("scale-free: |theta| must be below 1 rad (16-bit fractional angle word)");
    const FixedWord z = FixedWord::from_real(mag, kAngleQ16);
    const Vec2 v{FixedWord::from_real(x0, config.fmt),
                 FixedWord::from_real(mirror ? -y0 : y0, config.fmt)};
    RotationOutcome out = scale_free_rotate(z, v);
    if (mirror) {
        out.v.y = fx_neg(out.v.y);
        out.raw_y = -out.raw_y;
    }
    return out;
}

} // namespace

std::string to_string(Variant v)
{
    for (const auto& n : kNames)
        if (n.variant == v)
            return n.name;
    return "unknown";
}

std::optional<Variant> parse_variant(const std::string& name)
{
    for (const auto& n : kNames)
        if (name == n.name)
            return n.variant;
    return std::nullopt;
}

const std::vector<Variant>& all_variants()
{
    static const std::vector<Variant> list = [] {
        std::vector<Variant> v;
        for (const auto& n : kNames)
            v.push_back(n.variant);
        return v;
    }();
    return list;
}

std::string variant_list()
{
    std::string out;
    for (const auto& n : kNames) {
        if (!out.empty())
            out += ", ";
        out += n.name;
    }
    return out;
}

bool accepts_any_vector(Variant v) noexcept
{
    return v != Variant::rico;
}

RotationOutcome rotate(Variant variant, const EngineConfig& config, long double theta,
                       long double x0, long double y0)
{
    config.validate();
    if (config.mode != Mode::rotation || config.trajectory != Trajectory::circular)
        throw UsageError("rotate: engine must be configured for circular rotation");
    if (!std::isfinite(theta) || !std::isfinite(x0) || !std::isfinite(y0))
        throw RangeError("rotate: non-finite input");

    const QFormat fmt = config.fmt;
    if (variant == Variant::scale_free)
        return rotate_scale_free(config, theta, x0, y0);
    if (variant == Variant::rico) {
        if (x0 != 1.0L || y0 != 0.0L)
            throw UsageError("rico rotates the unit vector (1, 0) only");
        return rico_rotate(FixedWord::from_real(theta, fmt),
                           RicoConfig::make(fmt, config.max_iterations));
    }
    if (variant == Variant::conventional)
        return from_run(run(config, make_state(x0, y0, theta, fmt)));

    const FixedWord z = FixedWord::from_real(theta, fmt);
    const Vec2 v{FixedWord::from_real(x0, fmt), FixedWord::from_real(y0, fmt)};
    switch (variant) {
    case Variant::lookahead:
        return lookahead_rotate(config, z, v);
    case Variant::hybrid_mixed:
        return hybrid_rotate(config, z, v, HybridConfig::defaults(fmt), HybridFlavor::mixed);
    case Variant::hybrid_partitioned:
        return hybrid_rotate(config, z, v, HybridConfig::defaults(fmt), HybridFlavor::partitioned);
    case Variant::recoding:
        return recoding_rotate(config, z, v);
    case Variant::radix4:
        return radix4_rotate(config, z, v);
    default:
        break;
    }
    throw UsageError("rotate: unhandled variant " + to_string(variant));
}

} // namespace cordic
