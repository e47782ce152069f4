#pragma once

#include <span>

namespace rotwave {

// Least-squares slope of log(y) against log(x). Requires >= 2 positive pairs.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace rotwave
