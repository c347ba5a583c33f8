#include "cordic/variants.hpp"

#include "cordic/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>

namespace cordic {

LookaheadBlock LookaheadBlock::make(int first_index, std::span<const int> sigmas)
{
    if (first_index < 0)
        throw UsageError("lookahead block: negative first index");
    if (sigmas.empty() || sigmas.size() > 8)
        throw UsageError("lookahead block: 1..8 merged micro-rotations supported");
    for (int s : sigmas)
        if (s != 1 && s != -1)
            throw UsageError("lookahead block: sigmas must be +1 or -1");

    // Expand prod_j (1 + s_j 2^-(first+j) J) with J^2 = -1; the real part is P
    // and the J part is V. Terms with equal weight are combined.
    std::map<int, int> p_terms;
    std::map<int, int> v_terms;
    const unsigned n = static_cast<unsigned>(sigmas.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int coeff = 1;
        int shift = 0;
        for (unsigned j = 0; j < n; ++j) {
            if (mask & (1u << j)) {
                coeff *= sigmas[j];
                shift += first_index + static_cast<int>(j);
            }
        }
        switch (std::popcount(mask) % 4) {
        case 0: p_terms[shift] += coeff; break;
        case 1: v_terms[shift] += coeff; break;
        case 2: p_terms[shift] -= coeff; break;
        case 3: v_terms[shift] -= coeff; break;
        }
    }

    LookaheadBlock block;
    block.first_index = first_index;
    block.sigmas.assign(sigmas.begin(), sigmas.end());
    for (auto [shift, coeff] : p_terms)
        block.p.push_back({coeff, shift});
    for (auto [shift, coeff] : v_terms)
        block.v.push_back({coeff, shift});
    return block;
}

namespace {

long double terms_value(const std::vector<LookaheadTerm>& terms)
{
    long double sum = 0.0L;
    for (const auto& t : terms)
        sum += t.coeff * std::ldexp(1.0L, -t.shift);
    return sum;
}

int max_shift(const LookaheadBlock& block)
{
    int g = 0;
    for (const auto& t : block.p)
        g = std::max(g, t.shift);
    for (const auto& t : block.v)
        g = std::max(g, t.shift);
    return g;
}

// sum(coeff * word * 2^(g - shift)); terms deeper than g are floored individually.
__int128 accumulate(const std::vector<LookaheadTerm>& terms, std::int64_t word, int g)
{
    __int128 acc = 0;
    for (const auto& t : terms) {
        if (t.coeff == 0)
            continue;
        const __int128 scaled = static_cast<__int128>(t.coeff) * word;
        acc += t.shift <= g ? scaled << (g - t.shift) : scaled >> (t.shift - g);
    }
    return acc;
}

} // namespace

long double LookaheadBlock::p_value() const noexcept
{
    return terms_value(p);
}

long double LookaheadBlock::v_value() const noexcept
{
    return terms_value(v);
}

std::vector<int> lookahead_sigmas(const FixedWord& z0, int first_index, int count)
{
    std::vector<int> sigmas;
    sigmas.reserve(static_cast<std::size_t>(count));
    FixedWord z = z0;
    for (int j = 0; j < count; ++j) {
        const int sigma = z.raw() >= 0 ? 1 : -1;
        const FixedWord e = elementary_angle(Trajectory::circular, first_index + j, z.format());
        z = sigma > 0 ? fx_sub(z, e) : fx_add(z, e);
        sigmas.push_back(sigma);
    }
    return sigmas;
}

MergeResult lookahead_merge(const FixedWord& x0, const FixedWord& y0, const LookaheadBlock& block)
{
    if (!(x0.format() == y0.format()))
        throw UsageError("lookahead_merge: x and y formats differ");
    const QFormat fmt = x0.format();

    // Wide enough for exact evaluation of every term of any block that fits a
    // 16..32-bit word; deeper terms fall back to per-term flooring.
    const int g = std::min(max_shift(block), 120 - fmt.total_bits);
    const __int128 x_acc = accumulate(block.p, x0.raw(), g) - accumulate(block.v, y0.raw(), g);
    const __int128 y_acc = accumulate(block.p, y0.raw(), g) + accumulate(block.v, x0.raw(), g);
    const bool sticky = x0.overflow() || y0.overflow();

    MergeResult out;
    out.x = saturate(x_acc >> g, fmt, sticky);
    out.y = saturate(y_acc >> g, fmt, sticky);

    std::int64_t terms = 0;
    std::int64_t shifted = 0;
    for (const auto* list : {&block.p, &block.v})
        for (const auto& t : *list)
            if (t.coeff != 0) {
                ++terms;
                shifted += t.shift > 0 ? 1 : 0;
            }
    out.ops.adds = 2 * (terms - 1);
    out.ops.shifts = 2 * shifted;
    out.ops.iterations = 1;
    return out;
}

RotationOutcome lookahead_rotate(const EngineConfig& config, const FixedWord& theta, const Vec2& v)
{
    config.validate();
    if (!(theta.format() == config.fmt) || !(v.x.format() == config.fmt) ||
        !(v.y.format() == config.fmt))
        throw UsageError("lookahead_rotate: operands must use the engine format");

    RotationOutcome out;
    out.schedule.source = ScheduleSource::conventional;
    FixedWord x = v.x;
    FixedWord y = v.y;
    FixedWord z = theta;

    int i = 0;
    while (i < config.max_iterations) {
        if (std::llabs(z.raw()) <= config.z_epsilon.raw())
            break;
        const int count = std::min(4, config.max_iterations - i);
        const auto sigmas = lookahead_sigmas(z, i, count);
        const auto block = LookaheadBlock::make(i, sigmas);
        const auto merged = lookahead_merge(x, y, block);
        x = merged.x;
        y = merged.y;
        out.ops += merged.ops;
        for (int j = 0; j < count; ++j) {
            const FixedWord e = elementary_angle(Trajectory::circular, i + j, config.fmt);
            const FixedWord step = sigmas[j] > 0 ? e : fx_neg(e);
            z = fx_sub(z, step);
            out.schedule.entries.push_back({i + j, sigmas[j], step});
        }
        out.ops.adds += count;
        i += count;
    }
    out.status = std::llabs(z.raw()) <= config.z_epsilon.raw() ? Status::converged
                                                               : Status::budget_exhausted;
    out.raw_x = x.value();
    out.raw_y = y.value();
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
