#include "rotwave/fit.hpp"

#include <cmath>

#include "rotwave/error.hpp"

namespace rotwave {

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidInput("loglog_slope: need at least two (x, y) pairs");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0))
      throw InvalidInput("loglog_slope: values must be positive");
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw InvalidInput("loglog_slope: x values are all equal");
  return (n * sxy - sx * sy) / den;
}

}  // namespace rotwave
