#include "cordic/metrics.hpp"

#include "cordic/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace cordic {

double mse(const ImageBuffer& a, const ImageBuffer& b)
{
    if (a.width != b.width || a.height != b.height)
        throw UsageError("mse: image sizes differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const double d = static_cast<double>(a.samples[i]) - b.samples[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.samples.size());
}

double psnr(double mse)
{
    if (mse < 0)
        throw UsageError("psnr: negative mse");
    if (mse == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::string format_metric(double value)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

} // namespace cordic
