#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "rotwave/spectral.hpp"

namespace rotwave {

namespace {

// Per-grid multiplier tables, built once per thread.
struct Tables {
  std::vector<double> kabs, kx, ky;  // kx, ky with the Nyquist mode zeroed
  std::vector<unsigned char> band;
  std::map<double, std::vector<double>> powers;

  explicit Tables(const Grid2D& g) {
    const std::size_t n = g.size();
    kabs.resize(n);
    kx.resize(n);
    ky.resize(n);
    band.resize(n);
    for (int i = 0; i < g.nx(); ++i) {
      for (int j = 0; j < g.ny(); ++j) {
        const std::size_t k = g.index(i, j);
        kabs[k] = g.kabs(i, j);
        kx[k] = g.kx_odd(i);
        ky[k] = g.ky_odd(j);
        band[k] = in_dealias_band(g, i, j) ? 1 : 0;
      }
    }
  }

  const std::vector<double>& power(double s) {
    auto it = powers.find(s);
    if (it != powers.end()) return it->second;
    std::vector<double> t(kabs.size());
    for (std::size_t k = 0; k < t.size(); ++k)
      t[k] = kabs[k] > 0.0 ? std::pow(kabs[k], s) : 0.0;
    return powers.emplace(s, std::move(t)).first->second;
  }
};

Tables& tables(const Grid2D& g) {
  using Key = std::tuple<int, int, double, double>;
  thread_local std::map<Key, std::unique_ptr<Tables>> cache;
  const Key key{g.nx(), g.ny(), g.lx(), g.ly()};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<Tables>(g)).first;
  return *it->second;
}

}  // namespace

const std::vector<double>& wavenumber_power(const Grid2D& grid, double s) {
  return tables(grid).power(s);
}

SpectralField lambda_pow(SpectralField F, double s) {
  if (s == 0.0) return F;
  const std::vector<double>& m = tables(F.grid()).power(s);
  std::span<Complex> c = F.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= m[k];
  return F;
}

SpectralField riesz(SpectralField F, Axis axis) {
  Tables& t = tables(F.grid());
  const std::vector<double>& ki = axis == Axis::x1 ? t.kx : t.ky;
  std::span<Complex> c = F.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    // times -i ki / |k|
    const double m = t.kabs[k] > 0.0 ? ki[k] / t.kabs[k] : 0.0;
    c[k] = Complex(c[k].imag() * m, -c[k].real() * m);
  }
  return F;
}

SpectralField derivative(SpectralField F, Axis axis) {
  Tables& t = tables(F.grid());
  const std::vector<double>& ki = axis == Axis::x1 ? t.kx : t.ky;
  std::span<Complex> c = F.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = Complex(-c[k].imag() * ki[k], c[k].real() * ki[k]);
  return F;
}

bool in_dealias_band(const Grid2D& g, int i, int j) noexcept {
  // |m| <= n/3 in lattice units, i.e. |k| <= (n/3)(2 pi / l).
  return 3 * std::abs(g.mode_x(i)) <= g.nx() && 3 * std::abs(g.mode_y(j)) <= g.ny();
}

SpectralField dealias(SpectralField F) {
  const std::vector<unsigned char>& b = tables(F.grid()).band;
  std::span<Complex> c = F.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!b[k]) c[k] = Complex(0.0, 0.0);
  return F;
}

RealField lambda_pow(const RealField& f, double s) {
  return inverse(lambda_pow(forward(f), s));
}

RealField riesz(const RealField& f, Axis axis) { return inverse(riesz(forward(f), axis)); }

VectorField grad(const RealField& f) {
  const SpectralField F = forward(f);
  return VectorField(inverse(derivative(F, Axis::x1)), inverse(derivative(F, Axis::x2)));
}

RealField div(const VectorField& v) {
  SpectralField F = derivative(forward(v.x), Axis::x1);
  F += derivative(forward(v.y), Axis::x2);
  return inverse(F);
}

RealField dealias(const RealField& f) { return inverse(dealias(forward(f))); }

RealField product(const RealField& a, const RealField& b, bool dealias_product) {
  RealField p = pointwise(a, b);
  if (!dealias_product) return p;
  return inverse(dealias(forward(p)));
}

RealField dealiased_product(const RealField& a, const RealField& b) {
  return product(dealias(a), dealias(b), true);
}

double l2_norm_sq(const SpectralField& F) {
  double s = 0.0;
  for (const Complex& c : F.coeffs()) s += std::norm(c);
  const double n = static_cast<double>(F.size());
  return s * F.grid().area() / (n * n);
}

}  // namespace rotwave
