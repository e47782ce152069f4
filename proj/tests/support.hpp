#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "rotwave/field.hpp"

namespace rwtest {

using rotwave::Complex;
using rotwave::Grid2D;
using rotwave::RealField;

inline double max_diff(const RealField& a, const RealField& b) { return (a - b).max_abs(); }

// Smooth random field built from modes with |m_i| <= kmax.
inline RealField random_smooth(const Grid2D& g, unsigned seed, int kmax = 4,
                               bool zero_mean = true) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  RealField f(g);
  for (int m1 = -kmax; m1 <= kmax; ++m1) {
    for (int m2 = 0; m2 <= kmax; ++m2) {
      if (m2 == 0 && m1 < 0) continue;
      if (zero_mean && m1 == 0 && m2 == 0) continue;
      const double a = nd(rng) / (1.0 + m1 * m1 + m2 * m2);
      const double b = nd(rng) / (1.0 + m1 * m1 + m2 * m2);
      for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
          const double th = m1 * g.x(i) * 2.0 * M_PI / g.lx() + m2 * g.y(j) * 2.0 * M_PI / g.ly();
          f(i, j) += a * std::cos(th) + b * std::sin(th);
        }
    }
  }
  return f;
}

// White-noise samples (full spectrum).
inline RealField random_noise(const Grid2D& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  RealField f(g);
  for (double& v : f.values()) v = ud(rng);
  return f;
}

// Direct O(N^2) DFT coefficient sum_x f(x) e^{-i k.x} for lattice mode (m1, m2).
inline Complex naive_dft(const RealField& f, int m1, int m2) {
  const Grid2D& g = f.grid();
  Complex s = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double th = 2.0 * M_PI * (double(m1) * i / g.nx() + double(m2) * j / g.ny());
      s += f(i, j) * std::polar(1.0, -th);
    }
  return s;
}

}  // namespace rwtest
