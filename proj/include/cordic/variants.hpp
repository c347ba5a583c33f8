#pragma once

// Alternative rotation-mode engines. All of them take an angle and a vector
// and return the rotated vector with an operation count, like the
// conventional engine in core.hpp.

#include "cordic/core.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cordic {

struct Vec2 {
    FixedWord x;
    FixedWord y;
};

struct RotationOutcome {
    Vec2 v;                    // final words (scale-corrected when the engine corrects)
    long double raw_x = 0.0L;  // exact value of x before the correction multiply
    long double raw_y = 0.0L;
    long double k = 1.0L;      // correction factor applied (1 when none)
    OpCount ops;
    Status status = Status::converged;
    MicroRotationSchedule schedule;
    int worst_stage_shift = -1; // scale-free: smallest shift used (largest stage angle)

    // raw * k without output quantization.
    long double unquantized_x() const noexcept { return raw_x * k; }
    long double unquantized_y() const noexcept { return raw_y * k; }
};

// --- Scale-free (leading-one bit detection) --------------------------------

struct LobStage {
    int stage = 0;          // 1-based
    std::uint16_t z_in = 0;
    int position = 0;       // 15 (MSB) .. 0
    int shift = 0;          // 16 - position
    std::uint16_t z_out = 0;
};

struct LobTrace {
    std::vector<LobStage> stages;
};

struct LobResult {
    MicroRotationSchedule schedule;
    LobTrace trace;
};

// Decomposes a Q0.16 angle word into its set bits, most significant first.
LobResult lob_detect(std::uint16_t z);
// Word must carry 16 fractional bits and lie in [0, 0xFFFF].
LobResult lob_detect(const FixedWord& z);

struct ScaleFreeOptions {
    // Stages with a smaller shift are rejected (region-of-convergence guard).
    int min_start_shift = 1;
};

// Third-order Taylor rotation per detected bit, anticlockwise only, never
// scale-corrected. The 1/6 coefficient is the shift pair 2^-3 + 2^-5.
RotationOutcome scale_free_rotate(const FixedWord& theta, const Vec2& v,
                                  ScaleFreeOptions options = {});

// --- Lookahead --------------------------------------------------------------

struct LookaheadTerm {
    int coeff = 0; // signed small integer multiplier (products of sigmas)
    int shift = 0; // weight 2^-shift
};

// Merged form of consecutive micro-rotations at indices first_index.. :
// x_out = x*P - y*V, y_out = y*P + x*V.
struct LookaheadBlock {
    int first_index = 0;
    std::vector<int> sigmas;
    std::vector<LookaheadTerm> p; // sorted by shift
    std::vector<LookaheadTerm> v;

    static LookaheadBlock make(int first_index, std::span<const int> sigmas);

    long double p_value() const noexcept;
    long double v_value() const noexcept;
};

// Directions of the next `count` micro-rotations, from the z recurrence alone.
std::vector<int> lookahead_sigmas(const FixedWord& z0, int first_index = 0, int count = 4);

struct MergeResult {
    FixedWord x;
    FixedWord y;
    OpCount ops;
};

// Evaluates the block exactly in a wide accumulator and floors once.
MergeResult lookahead_merge(const FixedWord& x0, const FixedWord& y0, const LookaheadBlock& block);

RotationOutcome lookahead_rotate(const EngineConfig& config, const FixedWord& theta, const Vec2& v);

// --- Radix-4 ----------------------------------------------------------------

// Nearest of atan(s * 4^-i), s in {-2..2}, to z.
int radix4_select(const FixedWord& z, int i);

// x' = x + s 4^-i y, y' = y - s 4^-i x, z' = z - atan(s 4^-i): this datapath
// turns the vector clockwise by z0, so the engine starts from z0 = -theta.
// x/y carry two integer guard bits internally.
RotationOutcome radix4_rotate(const EngineConfig& config, const FixedWord& theta, const Vec2& v);

// --- Angle recoding (elementary-angle-set greedy) ----------------------------

// Greedy decomposition of theta into signed elementary angles atan(2^-i),
// i in [0, n_bits), until |residual| < 2^-n_bits. Results are cached per
// (theta, n_bits, fmt).
MicroRotationSchedule angle_recode_greedy(long double theta, int n_bits, QFormat fmt);

// Residual theta - sum(sigma * atan(2^-i)) of a recoded schedule, in exact arithmetic.
long double recoding_residual(long double theta, const MicroRotationSchedule& schedule);

RotationOutcome recoding_rotate(const EngineConfig& config, const FixedWord& theta, const Vec2& v);

// --- Hybrid -----------------------------------------------------------------

enum class HybridFlavor { mixed, partitioned };

struct HybridConfig {
    int m = 6;           // coarse iterations (split point)
    int total_bits = 16; // word width

    // m = ceil(total_bits / 3).
    static HybridConfig defaults(QFormat fmt);
    void validate() const;
};

// Fine-block directions for a residual angle: sign-magnitude binary digits at
// indices first..last (atan 2^-i taken as 2^-i). A residual beyond the digit
// range adds one repeated rotation at `first`.
MicroRotationSchedule hybrid_fine_digits(const FixedWord& residual, int first, int last);

RotationOutcome hybrid_rotate(const EngineConfig& config, const FixedWord& theta, const Vec2& v,
                              HybridConfig hybrid, HybridFlavor flavor);

// --- RICO (repetitive iteration) -------------------------------------------

struct RicoConfig {
    QFormat fmt = kQ2_14;
    int total_iterations = 16;
    FixedWord prerotation_angle; // 7 degrees
    // Head vectors after iterations 0..2, indexed by [direction][sigma bits],
    // seeded from IV(1, 0) pre-rotated twice by +/-7 degrees.
    std::array<std::array<Vec2, 8>, 2> merged_head{};

    static RicoConfig make(QFormat fmt = kQ2_14, int total_iterations = 16);
};

// Fixed-latency rotation of IV(1, 0) by theta.
RotationOutcome rico_rotate(const FixedWord& theta, const RicoConfig& config);

// --- Dispatch -----------------------------------------------------------------

enum class Variant {
    conventional,
    scale_free,
    lookahead,
    hybrid_mixed,
    hybrid_partitioned,
    recoding,
    radix4,
    rico,
};

std::string to_string(Variant v);
std::optional<Variant> parse_variant(const std::string& name);
const std::vector<Variant>& all_variants();
std::string variant_list();

// Whether the engine accepts an arbitrary input vector (RICO rotates IV only).
bool accepts_any_vector(Variant v) noexcept;

// Rotates (x0, y0) by theta radians with the chosen engine. theta must lie in
// the engine's convergence range; scale-free mirrors negative angles.
RotationOutcome rotate(Variant variant, const EngineConfig& config, long double theta,
                       long double x0 = 1.0L, long double y0 = 0.0L);

} // namespace cordic
