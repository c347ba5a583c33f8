#pragma once

#include "cordic/image.hpp"
#include "cordic/schedule.hpp"

#include <string>

namespace cordic {

struct MetricsReport {
    std::string variant;
    double mse = 0.0;
    double psnr = 0.0; // +infinity when mse == 0
    OpCount ops;       // engine work spent on the coefficients
};

// Mean squared error over 8-bit samples; sizes must match.
double mse(const ImageBuffer& a, const ImageBuffer& b);
// 10 log10(255^2 / mse), +infinity for mse == 0.
double psnr(double mse);
// Fixed 6 decimals, or "inf".
std::string format_metric(double value);

} // namespace cordic
