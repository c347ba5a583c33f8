#pragma once

// Elementary functions on top of the engines: each function is a fixed
// (mode, trajectory, initial vector, output extraction) recipe plus the range
// handling the raw iterations cannot do themselves (quadrant folding and
// power-of-two argument normalization).

#include "cordic/core.hpp"
#include "cordic/variants.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cordic {

// Q2.14, 16 iterations, 4-ulp thresholds.
inline EngineConfig default_engine()
{
    return EngineConfig::make(Mode::rotation, Trajectory::circular);
}

enum class Function {
    sin_cos,
    tan,
    polar_to_rect,
    sinh_cosh,
    tanh,
    exp,
    atan,
    rect_to_polar,
    divide,
    ln_sqrt,
    ln,
    sqrt,
};

std::string to_string(Function f);
std::optional<Function> parse_function(const std::string& name);
const std::vector<Function>& all_functions();
std::string function_list();
int arity(Function f);
// Argument names in order, e.g. divide -> {"b", "a"}.
std::vector<std::string> argument_names(Function f);

struct NamedValue {
    std::string name;
    long double value = 0.0L;       // from the engine's output words
    long double unquantized = 0.0L; // same recipe before the final output rounding
    bool angle = false;             // radians
};

struct FunctionResult {
    std::vector<NamedValue> values;
    QFormat fmt = kQ2_14;
    OpCount ops;
    Status status = Status::converged;

    // Throws UsageError for an unknown name.
    const NamedValue& at(const std::string& name) const;
    long double operator[](const std::string& name) const { return at(name).value; }
};

// Mode and trajectory of `engine` are ignored: each function picks its own.
// Variants other than conventional serve the circular rotation functions
// (sin_cos, tan, polar_to_rect) only.
struct FunctionRequest {
    Function function = Function::sin_cos;
    std::vector<long double> args;
    EngineConfig engine = default_engine();
    Variant variant = Variant::conventional;
};

FunctionResult evaluate(const FunctionRequest& request);

// Reference values from the C++ math library, in the order evaluate() reports them.
std::vector<long double> reference_values(Function f, std::span<const long double> args);

// Largest |theta| the hyperbolic rotation reaches with the shift sequence of n steps.
long double hyperbolic_range(int n);

// Shorthands over evaluate().
FunctionResult sin_cos(long double theta, const EngineConfig& engine = default_engine(),
                       Variant variant = Variant::conventional);
FunctionResult tan(long double theta, const EngineConfig& engine = default_engine(),
                   Variant variant = Variant::conventional);
FunctionResult polar_to_rect(long double r, long double theta, const EngineConfig& engine = default_engine(),
                             Variant variant = Variant::conventional);
FunctionResult sinh_cosh(long double theta, const EngineConfig& engine = default_engine());
FunctionResult tanh(long double theta, const EngineConfig& engine = default_engine());
FunctionResult exp(long double theta, const EngineConfig& engine = default_engine());
FunctionResult atan(long double a, const EngineConfig& engine = default_engine());
FunctionResult rect_to_polar(long double a, long double b, const EngineConfig& engine = default_engine());
FunctionResult divide(long double b, long double a, const EngineConfig& engine = default_engine());
FunctionResult ln_sqrt(long double a, const EngineConfig& engine = default_engine());

} // namespace cordic
