#include "cordic/dct.hpp"

#include "cordic/errors.hpp"
#include "cordic/functions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cordic {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

long double percent(long double approx, long double exact)
{
    return std::fabs(approx - exact) / std::fabs(exact) * 100.0L;
}

} // namespace

std::string to_string(const DctSource& source)
{
    return source ? to_string(*source) : "exact";
}

std::optional<DctSource> parse_dct_source(const std::string& name)
{
    if (name == "exact")
        return DctSource{};
    if (auto v = parse_variant(name))
        return DctSource{*v};
    return std::nullopt;
}

std::vector<DctSource> all_dct_sources()
{
    std::vector<DctSource> out{DctSource{}};
    for (Variant v : all_variants())
        out.emplace_back(v);
    return out;
}

const std::array<DctAngle, 7>& dct_angles()
{
    static const std::array<DctAngle, 7> angles = [] {
        std::array<DctAngle, 7> a{};
        for (int k = 1; k <= 7; ++k)
            a[static_cast<std::size_t>(k - 1)] = {static_cast<char>('a' + k - 1), k,
                                                   k * kPi / 16.0L, k * 180.0L / 16.0L};
        return a;
    }();
    return angles;
}

long double exact_dct_cos(int k)
{
    if (k == 4)
        return 1.0L / std::sqrt(2.0L);
    return std::cos(k * kPi / 16.0L);
}

CosineApprox dct_cosine(const DctSource& source, const EngineConfig& config, long double theta)
{
    CosineApprox out;
    if (!source) {
        out.unquantized = out.quantized = std::cos(theta);
        return out;
    }
    const FunctionResult r = sin_cos(theta, config, *source);
    const NamedValue& c = r.at("cos");
    out.unquantized = c.unquantized;
    out.quantized = c.value;
    out.ops = r.ops;
    out.status = r.status;
    return out;
}

const CoefficientRow& CoefficientReport::row(char label) const
{
    for (const auto& r : rows)
        if (r.angle.label == label)
            return r;
    throw UsageError(std::string("no DCT coefficient labeled '") + label + "'");
}

CoefficientReport dct_coefficients(const DctSource& source, const EngineConfig& config)
{
    CoefficientReport report;
    report.source = source;
    report.config = config;
    for (std::size_t n = 0; n < 7; ++n) {
        const DctAngle& a = dct_angles()[n];
        CoefficientRow& row = report.rows[n];
        row.angle = a;
        row.exact = exact_dct_cos(a.k);
        if (source) {
            const CosineApprox c = dct_cosine(source, config, a.radians);
            row.approx = c.unquantized;
            row.quantized = c.quantized;
            report.ops += c.ops;
            if (c.status == Status::budget_exhausted)
                report.status = Status::budget_exhausted;
        } else {
            row.approx = row.quantized = row.exact;
        }
        row.percent_error = percent(row.approx, row.exact);
        row.quantized_percent_error = percent(row.quantized, row.exact);
    }
    return report;
}

std::string config_snapshot(const EngineConfig& config)
{
    std::ostringstream os;
    os << "format=" << config.fmt.name() << " iterations=" << config.max_iterations
       << " epsilon_ulps=" << config.z_epsilon.raw()
       << " scale_correction=" << (config.scale_correction ? "on" : "off");
    return os.str();
}

DctMatrix8 DctMatrix8::from_cosines(const std::array<long double, 7>& cosines)
{
    DctMatrix8 out;
    const long double c0 = 1.0L / std::sqrt(8.0L);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            // cos(n pi / 16) folded onto k in 0..8 with a sign.
            int n = ((2 * j + 1) * i) % 32;
            if (n > 16)
                n = 32 - n;
            long double sign = 1.0L;
            if (n > 8) {
                n = 16 - n;
                sign = -1.0L;
            }
            long double c = n == 0 ? 1.0L : n == 8 ? 0.0L : cosines[static_cast<std::size_t>(n - 1)];
            c *= sign;
            out.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<double>(i == 0 ? c0 : c / 2.0L);
        }
    }
    return out;
}

DctMatrix8 DctMatrix8::exact()
{
    std::array<long double, 7> c{};
    for (int k = 1; k <= 7; ++k)
        c[static_cast<std::size_t>(k - 1)] = exact_dct_cos(k);
    return from_cosines(c);
}

DctMatrix8 build_matrix(const CoefficientReport& report)
{
    std::array<long double, 7> c{};
    for (std::size_t n = 0; n < 7; ++n)
        c[n] = report.rows[n].quantized;
    return DctMatrix8::from_cosines(c);
}

Block8 multiply(const Block8& a, const Block8& b)
{
    Block8 out{};
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 8; ++k)
                s += a[i][k] * b[k][j];
            out[i][j] = s;
        }
    return out;
}

Block8 transpose(const Block8& a)
{
    Block8 out{};
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            out[j][i] = a[i][j];
    return out;
}

Block8 transform_2d(const Block8& block, const DctMatrix8& m, Direction direction)
{
    const Block8 mt = transpose(m.m);
    if (direction == Direction::forward)
        return multiply(multiply(m.m, block), mt);
    return multiply(multiply(mt, block), m.m);
}

double orthonormality_error(const DctMatrix8& m)
{
    const Block8 p = multiply(m.m, transpose(m.m));
    double worst = 0.0;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            worst = std::max(worst, std::fabs(p[i][j] - (i == j ? 1.0 : 0.0)));
    return worst;
}

double frobenius_norm(const Block8& b)
{
    double s = 0.0;
    for (const auto& row : b)
        for (double v : row)
            s += v * v;
    return std::sqrt(s);
}

} // namespace cordic
