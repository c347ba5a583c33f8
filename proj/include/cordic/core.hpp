#pragma once

// Conventional CORDIC: x' = x - m*s*2^-i*y, y' = y + s*2^-i*x, z' = z - s*e_i
// over the circular (m = +1), linear (m = 0) and hyperbolic (m = -1)
// trajectories, driven in rotation mode (z -> 0) or vectoring mode (y -> 0).

#include "cordic/fixnum.hpp"
#include "cordic/schedule.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cordic {

enum class Trajectory { circular, linear, hyperbolic };
enum class Mode { rotation, vectoring };

int curvature(Trajectory t) noexcept;
std::string to_string(Trajectory t);
std::string to_string(Mode m);

struct CordicState {
    FixedWord x;
    FixedWord y;
    FixedWord z;
    int i = 0; // iterations executed so far

    bool overflow() const noexcept { return x.overflow() || y.overflow() || z.overflow(); }
};

CordicState make_state(long double x, long double y, long double z, QFormat fmt);

struct EngineConfig {
    Mode mode = Mode::rotation;
    Trajectory trajectory = Trajectory::circular;
    QFormat fmt = kQ2_14;
    int max_iterations = 16;
    FixedWord z_epsilon;
    FixedWord y_epsilon;
    bool scale_correction = true;

    // Thresholds default to 4 ulps of fmt.
    static EngineConfig make(Mode mode, Trajectory trajectory, QFormat fmt = kQ2_14,
                             int max_iterations = 16, int epsilon_ulps = 4);

    // Throws UsageError on a broken invariant.
    void validate() const;
};

// Circular: atan(2^-i); linear: 2^-i; hyperbolic: atanh(2^-i) (i >= 1).
// Reference values are tabulated once in extended precision and quantized.
long double elementary_angle_exact(Trajectory t, int i);
FixedWord elementary_angle(Trajectory t, int i, QFormat fmt);

// Rotation: +1 if z >= 0. Vectoring: +1 if y < 0. Ties resolve to +1.
int sigma_select(Mode mode, const CordicState& state) noexcept;

// One micro-rotation at shift index `shift` (defaults to state.i); i' = i + 1.
CordicState micro_rotate(const CordicState& state, int sigma, Trajectory t,
                         std::optional<int> shift = std::nullopt);

// k for n uniform radix-2 circular micro-rotations (i = 0..n-1).
long double scale_factor(int n);
// k for an explicit schedule; sigma = 0 entries contribute 1. Radix-4 schedules
// use 1/sqrt(1 + s^2 4^-2i), hyperbolic 1/sqrt(1 - 2^-2i).
long double scale_factor(const MicroRotationSchedule& schedule,
                         Trajectory t = Trajectory::circular);

// The shift indices a conventional run walks through: 0..n-1, or for the
// hyperbolic trajectory 1.. with 4, 13, 40 executed twice, truncated to n steps.
std::vector<int> shift_sequence(Trajectory t, int max_iterations);

enum class Status { converged, budget_exhausted };
std::string to_string(Status s);

struct RunResult {
    CordicState state;     // scale-corrected when correction is on
    CordicState raw_state; // before the correction multiply
    OpCount ops;
    Status status = Status::converged;
    MicroRotationSchedule applied;
    long double k = 1.0L;  // correction factor matching `applied`
};

RunResult run(const EngineConfig& config, const CordicState& init);

} // namespace cordic
