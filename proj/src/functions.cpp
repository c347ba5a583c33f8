#include "cordic/functions.hpp"

#include "cordic/errors.hpp"

#include <cmath>
#include <numbers>

namespace cordic {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr int kDivideGuardBits = 8;

struct FunctionInfo {
    Function function;
    const char* name;
    std::vector<std::string> args;
};

const std::vector<FunctionInfo>& table()
{
    static const std::vector<FunctionInfo> t = {
        {Function::sin_cos, "sin-cos", {"theta"}},
        {Function::tan, "tan", {"theta"}},
        {Function::polar_to_rect, "polar-to-rect", {"r", "theta"}},
        {Function::sinh_cosh, "sinh-cosh", {"theta"}},
        {Function::tanh, "tanh", {"theta"}},
        {Function::exp, "exp", {"theta"}},
        {Function::atan, "atan", {"a"}},
        {Function::rect_to_polar, "rect-to-polar", {"a", "b"}},
        {Function::divide, "divide", {"b", "a"}},
        {Function::ln_sqrt, "ln-sqrt", {"a"}},
        {Function::ln, "ln", {"a"}},
        {Function::sqrt, "sqrt", {"a"}},
    };
    return t;
}

const FunctionInfo& info(Function f)
{
    for (const auto& i : table())
        if (i.function == f)
            return i;
    throw UsageError("unknown function");
}

EngineConfig configure(const EngineConfig& base, Mode mode, Trajectory t)
{
    EngineConfig e = base;
    e.mode = mode;
    e.trajectory = t;
    return e;
}

void absorb(FunctionResult& r, const OpCount& ops, Status s)
{
    r.ops += ops;
    if (s == Status::budget_exhausted)
        r.status = Status::budget_exhausted;
}

// Largest power of two not above the format's positive range.
long double format_span(QFormat fmt)
{
    return std::ldexp(1.0L, fmt.int_bits() - 1);
}

// s such that m * 2^-s lies in (limit/2, limit].
int normalizing_shift(long double m, long double limit)
{
    if (m <= 0.0L)
        return 0;
    int s = static_cast<int>(std::ceil(std::log2(m / limit)));
    while (std::ldexp(m, -s) > limit)
        ++s;
    while (std::ldexp(m, -(s - 1)) <= limit)
        --s;
    return s;
}

// Range of the linear vectoring quotient after n steps: sum of 2^-i, i < n.
long double linear_range(int n)
{
    return 2.0L - std::ldexp(1.0L, -(n - 1));
}

struct Rotated {
    FixedWord c;
    FixedWord s;
    long double cu = 0.0L; // before output rounding
    long double su = 0.0L;
    OpCount ops;
    Status status = Status::converged;
};

// Rotates (r, 0) by theta after folding theta into [-pi/2, pi/2]; the
// scale-free engine also folds into [0, pi/4] with a cos/sin swap.
Rotated circular_rotate(const EngineConfig& base, Variant variant, long double theta, long double r)
{
    const EngineConfig e = configure(base, Mode::rotation, Trajectory::circular);
    long double t = std::remainder(theta, 2.0L * kPi);
    bool flip = false;
    if (std::fabs(t) > kPi / 2.0L) {
        t -= std::copysign(kPi, t);
        flip = true;
    }
    // Floor arithmetic is not symmetric in the angle; rotating by |t| and
    // mirroring keeps cos exactly even and sin exactly odd.
    const bool mirror = t < 0;
    t = std::fabs(t);
    bool swap = false;
    if (variant == Variant::scale_free && t > kPi / 4.0L) {
        t = kPi / 2.0L - t;
        swap = true;
    }

    const RotationOutcome o = rotate(variant, e, t, r, 0.0L);
    Rotated out;
    out.c = o.v.x;
    out.s = o.v.y;
    out.cu = o.unquantized_x();
    out.su = o.unquantized_y();
    out.ops = o.ops;
    out.status = o.status;
    if (swap) {
        std::swap(out.c, out.s);
        std::swap(out.cu, out.su);
    }
    if (mirror) {
        out.s = fx_neg(out.s);
        out.su = -out.su;
    }
    if (flip) {
        out.c = fx_neg(out.c);
        out.s = fx_neg(out.s);
        out.cu = -out.cu;
        out.su = -out.su;
    }
    return out;
}

struct Quotient {
    long double value = 0.0L;
    OpCount ops;
    Status status = Status::converged;
};

// num / den by linear vectoring. Both operands are scaled by the same power of
// two so the larger one fills the word.
Quotient linear_divide(const EngineConfig& base, long double num, long double den)
{
    EngineConfig e = configure(base, Mode::vectoring, Trajectory::linear);
    if (den == 0.0L)
        throw DomainError("divide: division by zero");
    if (std::fabs(num) >= linear_range(e.max_iterations) * std::fabs(den))
        throw RangeError("divide: quotient outside the linear vectoring range of +/-" +
                         std::to_string(static_cast<double>(linear_range(e.max_iterations))));
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const QFormat fmt = e.fmt;
    // Larger operand in [span/2, span): the quotient error is at most
    // |y_final| / x, so a full-scale operand keeps x large.
    const long double m = std::max(std::fabs(num), den);
    int s = normalizing_shift(m, format_span(fmt));
    if (std::ldexp(m, -s) >= format_span(fmt) ||
        std::ldexp(m, -s) + fmt.ulp() / 2.0L > fmt.max_value())
        ++s;
    const FixedWord x0 = FixedWord::from_real(std::ldexp(den, -s), fmt);
    const FixedWord y0 = FixedWord::from_real(std::ldexp(num, -s), fmt);
    if (x0.raw() == 0)
        throw RangeError("divide: divisor vanishes at " + fmt.name() + " after normalization");

    // x stays constant in linear vectoring, so every floored x >> i lands in y
    // uncorrected. Guard bits keep that truncation below the output ulp; the
    // pass runs down to a one-ulp remainder of the caller's format.
    const int guard = std::min(kDivideGuardBits, 64 - fmt.total_bits);
    const QFormat wide{fmt.total_bits + guard, fmt.frac_bits + guard};
    e.fmt = wide;
    e.z_epsilon = FixedWord::from_raw(base.z_epsilon.raw() << guard, wide);
    e.y_epsilon = FixedWord::from_raw(std::int64_t{1} << guard, wide);
    const CordicState init{fx_resize(x0, wide), fx_resize(y0, wide), FixedWord::zero(wide), 0};
    const RunResult r = run(e, init);
    // Round back to the caller's format; the top of the range clamps.
    const long double q = std::min(std::roundl(std::ldexp(r.state.z.value(), fmt.frac_bits)),
                                   static_cast<long double>(fmt.max_raw()));
    return {FixedWord::from_raw(static_cast<std::int64_t>(q), fmt).value(), r.ops, r.status};
}

void require_variant(Function f, Variant v)
{
    if (v == Variant::conventional)
        return;
    if (f != Function::sin_cos && f != Function::tan && f != Function::polar_to_rect)
        throw UsageError(to_string(f) + " runs on the conventional engine only (variant " +
                         to_string(v) + " is rotation/circular only)");
    if (f == Function::polar_to_rect && !accepts_any_vector(v))
        throw UsageError("polar-to-rect needs an engine that accepts an arbitrary start vector; " +
                         to_string(v) + " rotates (1, 0) only");
}

FunctionResult fn_sin_cos(const EngineConfig& e, Variant v, long double theta)
{
    const Rotated r = circular_rotate(e, v, theta, 1.0L);
    FunctionResult out;
    out.fmt = e.fmt;
    absorb(out, r.ops, r.status);
    out.values = {{"cos", r.c.value(), r.cu}, {"sin", r.s.value(), r.su}};
    return out;
}

FunctionResult fn_tan(const EngineConfig& e, Variant v, long double theta)
{
    const Rotated r = circular_rotate(e, v, theta, 1.0L);
    FunctionResult out;
    out.fmt = e.fmt;
    absorb(out, r.ops, r.status);
    if (r.c.raw() == 0)
        throw RangeError("tan: cosine vanishes at " + e.fmt.name());
    const Quotient q = linear_divide(e, r.s.value(), r.c.value());
    absorb(out, q.ops, q.status);
    out.values = {{"tan", q.value, q.value}};
    return out;
}

FunctionResult fn_polar_to_rect(const EngineConfig& e, Variant v, long double radius,
                                long double theta)
{
    if (radius < 0)
        throw DomainError("polar-to-rect: radius must be >= 0");
    FunctionResult out;
    out.fmt = e.fmt;
    if (radius == 0.0L) {
        out.values = {{"x", 0.0L, 0.0L}, {"y", 0.0L, 0.0L}};
        return out;
    }
    // The rotation grows the vector by ~1.647 before correction.
    const int s = normalizing_shift(radius, format_span(e.fmt) / 2.0L);
    if (std::abs(s) > 32)
        throw RangeError("polar-to-rect: radius outside the normalizable range 2^-32..2^32");
    const Rotated r = circular_rotate(e, v, theta, std::ldexp(radius, -s));
    absorb(out, r.ops, r.status);
    out.values = {{"x", std::ldexp(r.c.value(), s), std::ldexp(r.cu, s)},
                  {"y", std::ldexp(r.s.value(), s), std::ldexp(r.su, s)}};
    return out;
}

RunResult hyperbolic_rotate(const EngineConfig& base, long double theta)
{
    const EngineConfig e = configure(base, Mode::rotation, Trajectory::hyperbolic);
    const long double range = hyperbolic_range(e.max_iterations);
    if (!(std::fabs(theta) <= range))
        throw DomainError("hyperbolic functions need |theta| <= " +
                          std::to_string(static_cast<double>(range)) + " (no range extension)");
    return run(e, make_state(1.0L, 0.0L, theta, e.fmt));
}

long double unquantized(const RunResult& r, bool x)
{
    return (x ? r.raw_state.x.value() : r.raw_state.y.value()) * r.k;
}

FunctionResult fn_sinh_cosh(const EngineConfig& e, long double theta)
{
    const RunResult r = hyperbolic_rotate(e, theta);
    FunctionResult out;
    out.fmt = e.fmt;
    absorb(out, r.ops, r.status);
    out.values = {{"cosh", r.state.x.value(), unquantized(r, true)},
                  {"sinh", r.state.y.value(), unquantized(r, false)}};
    return out;
}

FunctionResult fn_exp(const EngineConfig& e, long double theta)
{
    FunctionResult out = fn_sinh_cosh(e, theta);
    const auto& c = out.values[0];
    const auto& s = out.values[1];
    out.values = {{"exp", c.value + s.value, c.unquantized + s.unquantized}};
    return out;
}

FunctionResult fn_tanh(const EngineConfig& e, long double theta)
{
    const RunResult r = hyperbolic_rotate(e, theta);
    FunctionResult out;
    out.fmt = e.fmt;
    absorb(out, r.ops, r.status);
    const Quotient q = linear_divide(e, r.state.y.value(), r.state.x.value());
    absorb(out, q.ops, q.status);
    out.values = {{"tanh", q.value, q.value}};
    return out;
}

// Circular vectoring of (a, b) with a >= 0; returns magnitude and angle.
FunctionResult circular_vectoring(const EngineConfig& base, long double a, long double b,
                                  const char* mag_name, const char* angle_name)
{
    const EngineConfig e = configure(base, Mode::vectoring, Trajectory::circular);
    FunctionResult out;
    out.fmt = e.fmt;
    // sqrt(2) * 1.647 of growth must stay inside the word.
    const int s = normalizing_shift(std::max(std::fabs(a), std::fabs(b)),
                                    format_span(e.fmt) / 4.0L);
    const RunResult r = run(e, make_state(std::ldexp(a, -s), std::ldexp(b, -s), 0.0L, e.fmt));
    absorb(out, r.ops, r.status);
    out.values = {{mag_name, std::ldexp(r.state.x.value(), s), std::ldexp(unquantized(r, true), s)},
                  {angle_name, r.state.z.value(), r.state.z.value(), true}};
    return out;
}

FunctionResult fn_atan(const EngineConfig& e, long double a)
{
    FunctionResult out = circular_vectoring(e, 1.0L, a, "magnitude", "atan");
    out.values.erase(out.values.begin());
    return out;
}

FunctionResult fn_rect_to_polar(const EngineConfig& e, long double a, long double b)
{
    if (a == 0.0L && b == 0.0L)
        throw DomainError("rect-to-polar: the origin has no phase");
    long double offset = 0.0L;
    if (a < 0) {
        // Pre-rotation by pi brings the vector into the right half plane.
        offset = b >= 0 ? kPi : -kPi;
        a = -a;
        b = -b;
    }
    FunctionResult out = circular_vectoring(e, a, b, "magnitude", "phase");
    out.values[1].value += offset;
    out.values[1].unquantized += offset;
    return out;
}

FunctionResult fn_divide(const EngineConfig& e, long double b, long double a)
{
    const Quotient q = linear_divide(e, b, a);
    FunctionResult out;
    out.fmt = e.fmt;
    absorb(out, q.ops, q.status);
    out.values = {{"quotient", q.value, q.value}};
    return out;
}

FunctionResult fn_ln_sqrt(const EngineConfig& base, long double a)
{
    if (!(a > 0.0L))
        throw DomainError("ln/sqrt: argument must be > 0");
    const EngineConfig e = configure(base, Mode::vectoring, Trajectory::hyperbolic);
    const long double lo = std::exp(-2.0L * hyperbolic_range(e.max_iterations));
    constexpr long double hi = 2.4L;
    if (a < lo || a > hi)
        throw RangeError("ln/sqrt: argument outside the convergence region [" +
                         std::to_string(static_cast<double>(lo)) + ", " +
                         std::to_string(static_cast<double>(hi)) + "]");
    // Halved start vector ((a+1)/2, (a-1)/2): its hyperbolic norm is sqrt(a).
    const RunResult r = run(e, make_state((a + 1.0L) / 2.0L, (a - 1.0L) / 2.0L, 0.0L, e.fmt));
    FunctionResult out;
    out.fmt = e.fmt;
    absorb(out, r.ops, r.status);
    const long double z = r.state.z.value();
    out.values = {{"ln", 2.0L * z, 2.0L * z}, {"sqrt", r.state.x.value(), unquantized(r, true)}};
    return out;
}

} // namespace

std::string to_string(Function f)
{
    return info(f).name;
}

std::optional<Function> parse_function(const std::string& name)
{
    for (const auto& i : table())
        if (name == i.name)
            return i.function;
    return std::nullopt;
}

const std::vector<Function>& all_functions()
{
    static const std::vector<Function> list = [] {
        std::vector<Function> v;
        for (const auto& i : table())
            v.push_back(i.function);
        return v;
    }();
    return list;
}

std::string function_list()
{
    std::string out;
    for (const auto& i : table()) {
        if (!out.empty())
            out += ", ";
        out += i.name;
    }
    return out;
}

int arity(Function f)
{
    return static_cast<int>(info(f).args.size());
}

std::vector<std::string> argument_names(Function f)
{
    return info(f).args;
}

const NamedValue& FunctionResult::at(const std::string& name) const
{
    for (const auto& v : values)
        if (v.name == name)
            return v;
    throw UsageError("no output named '" + name + "'");
}

long double hyperbolic_range(int n)
{
    long double sum = 0.0L;
    for (int i : shift_sequence(Trajectory::hyperbolic, n))
        sum += elementary_angle_exact(Trajectory::hyperbolic, i);
    return sum;
}

FunctionResult evaluate(const FunctionRequest& request)
{
    const Function f = request.function;
    const auto& args = request.args;
    if (static_cast<int>(args.size()) != arity(f))
        throw UsageError(to_string(f) + " takes " + std::to_string(arity(f)) + " argument(s), got " +
                         std::to_string(args.size()));
    for (long double a : args)
        if (!std::isfinite(a))
            throw RangeError(to_string(f) + ": non-finite argument");
    require_variant(f, request.variant);
    request.engine.validate();

    const EngineConfig& e = request.engine;
    switch (f) {
    case Function::sin_cos:
        return fn_sin_cos(e, request.variant, args[0]);
    case Function::tan:
        return fn_tan(e, request.variant, args[0]);
    case Function::polar_to_rect:
        return fn_polar_to_rect(e, request.variant, args[0], args[1]);
    case Function::sinh_cosh:
        return fn_sinh_cosh(e, args[0]);
    case Function::tanh:
        return fn_tanh(e, args[0]);
    case Function::exp:
        return fn_exp(e, args[0]);
    case Function::atan:
        return fn_atan(e, args[0]);
    case Function::rect_to_polar:
        return fn_rect_to_polar(e, args[0], args[1]);
    case Function::divide:
        return fn_divide(e, args[0], args[1]);
    case Function::ln_sqrt:
        return fn_ln_sqrt(e, args[0]);
    case Function::ln: {
        FunctionResult r = fn_ln_sqrt(e, args[0]);
        r.values.pop_back();
        return r;
    }
    case Function::sqrt: {
        FunctionResult r = fn_ln_sqrt(e, args[0]);
        r.values.erase(r.values.begin());
        return r;
    }
    }
    throw UsageError("unknown function");
}

std::vector<long double> reference_values(Function f, std::span<const long double> args)
{
    if (static_cast<int>(args.size()) != arity(f))
        throw UsageError(to_string(f) + ": wrong argument count");
    switch (f) {
    case Function::sin_cos:
        return {std::cos(args[0]), std::sin(args[0])};
    case Function::tan:
        return {std::tan(args[0])};
    case Function::polar_to_rect:
        return {args[0] * std::cos(args[1]), args[0] * std::sin(args[1])};
    case Function::sinh_cosh:
        return {std::cosh(args[0]), std::sinh(args[0])};
    case Function::tanh:
        return {std::tanh(args[0])};
    case Function::exp:
        return {std::exp(args[0])};
    case Function::atan:
        return {std::atan(args[0])};
    case Function::rect_to_polar:
        return {std::hypot(args[0], args[1]), std::atan2(args[1], args[0])};
    case Function::divide:
        return {args[0] / args[1]};
    case Function::ln_sqrt:
        return {std::log(args[0]), std::sqrt(args[0])};
    case Function::ln:
        return {std::log(args[0])};
    case Function::sqrt:
        return {std::sqrt(args[0])};
    }
    return {};
}

FunctionResult sin_cos(long double theta, const EngineConfig& engine, Variant variant)
{
    return evaluate({Function::sin_cos, {theta}, engine, variant});
}

FunctionResult tan(long double theta, const EngineConfig& engine, Variant variant)
{
    return evaluate({Function::tan, {theta}, engine, variant});
}

FunctionResult polar_to_rect(long double r, long double theta, const EngineConfig& engine,
                             Variant variant)
{
    return evaluate({Function::polar_to_rect, {r, theta}, engine, variant});
}

FunctionResult sinh_cosh(long double theta, const EngineConfig& engine)
{
    return evaluate({Function::sinh_cosh, {theta}, engine, Variant::conventional});
}

FunctionResult tanh(long double theta, const EngineConfig& engine)
{
    return evaluate({Function::tanh, {theta}, engine, Variant::conventional});
}

FunctionResult exp(long double theta, const EngineConfig& engine)
{
    return evaluate({Function::exp, {theta}, engine, Variant::conventional});
}

FunctionResult atan(long double a, const EngineConfig& engine)
{
    return evaluate({Function::atan, {a}, engine, Variant::conventional});
}

FunctionResult rect_to_polar(long double a, long double b, const EngineConfig& engine)
{
    return evaluate({Function::rect_to_polar, {a, b}, engine, Variant::conventional});
}

FunctionResult divide(long double b, long double a, const EngineConfig& engine)
{
    return evaluate({Function::divide, {b, a}, engine, Variant::conventional});
}

FunctionResult ln_sqrt(long double a, const EngineConfig& engine)
{
    return evaluate({Function::ln_sqrt, {a}, engine, Variant::conventional});
}

} // namespace cordic
