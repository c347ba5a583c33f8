#pragma once

// 8-point DCT-II coefficients generated by the rotation engines, the 8x8
// matrices built from them, and blockwise forward/inverse transforms.

#include "cordic/core.hpp"
#include "cordic/variants.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cordic {

// Where the cosines come from: an engine variant, or nullopt for the exact
// reference ("exact" on the command line).
using DctSource = std::optional<Variant>;

std::string to_string(const DctSource& source);
std::optional<DctSource> parse_dct_source(const std::string& name);
// "exact" followed by every engine variant.
std::vector<DctSource> all_dct_sources();

// The seven distinct cosines cos(k pi / 16), k = 1..7, labeled a..g.
struct DctAngle {
    char label = 'a';
    int k = 1;
    long double radians = 0.0L;
    long double degrees = 0.0L;
};
const std::array<DctAngle, 7>& dct_angles();

// Reference cos(k pi / 16); k = 4 is the closed form 1/sqrt(2).
long double exact_dct_cos(int k);

struct CosineApprox {
    long double unquantized = 0.0L; // before the output word is rounded
    long double quantized = 0.0L;
    OpCount ops;
    Status status = Status::converged;
};

// cos(theta) through the given source with the function layer's folding.
CosineApprox dct_cosine(const DctSource& source, const EngineConfig& config, long double theta);

struct CoefficientRow {
    DctAngle angle;
    long double exact = 0.0L;
    long double approx = 0.0L;    // pre-quantization engine value
    long double quantized = 0.0L; // engine output word
    long double percent_error = 0.0L;           // |approx - exact| / |exact| * 100
    long double quantized_percent_error = 0.0L; // same for the output word
};

struct CoefficientReport {
    DctSource source;
    EngineConfig config;
    std::array<CoefficientRow, 7> rows{};
    OpCount ops;
    Status status = Status::converged;

    const CoefficientRow& row(char label) const;
};

CoefficientReport dct_coefficients(const DctSource& source, const EngineConfig& config);

// "format=q2.14 iterations=16 epsilon_ulps=4 scale_correction=on"
std::string config_snapshot(const EngineConfig& config);

using Block8 = std::array<std::array<double, 8>, 8>;

struct DctMatrix8 {
    Block8 m{};

    static DctMatrix8 exact();
    // C[i][j] = c(i) cos((2j+1) i pi / 16) with cos(k pi/16) read from `cosines`
    // (index k - 1); c(0) = 1/sqrt(8), c(i > 0) = 1/2.
    static DctMatrix8 from_cosines(const std::array<long double, 7>& cosines);
};

// Built from the engine output words (or exact cosines for the exact source).
DctMatrix8 build_matrix(const CoefficientReport& report);

enum class Direction { forward, inverse };

// forward: M B M^T; inverse: M^T B M.
Block8 transform_2d(const Block8& block, const DctMatrix8& m, Direction direction);

Block8 multiply(const Block8& a, const Block8& b);
Block8 transpose(const Block8& a);
// max |M M^T - I| over all entries.
double orthonormality_error(const DctMatrix8& m);
double frobenius_norm(const Block8& b);

} // namespace cordic
