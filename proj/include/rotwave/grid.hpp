#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace rotwave {

// Doubly periodic N x N box standing in for R^2. Index i runs along x1,
// j along x2; storage is row-major with j fastest.
class Grid2D {
 public:
  Grid2D(int nx, int ny, double lx = 2.0 * std::numbers::pi,
         double ly = 2.0 * std::numbers::pi);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny_) +
           static_cast<std::size_t>(j);
  }

  double dx() const noexcept { return lx_ / nx_; }
  double dy() const noexcept { return ly_ / ny_; }
  double cell_area() const noexcept { return dx() * dy(); }
  double area() const noexcept { return lx_ * ly_; }

  double x(int i) const noexcept { return i * dx(); }
  double y(int j) const noexcept { return j * dy(); }

  // Signed lattice index in {-n/2+1, ..., n/2}.
  int mode_x(int i) const noexcept { return i <= nx_ / 2 ? i : i - nx_; }
  int mode_y(int j) const noexcept { return j <= ny_ / 2 ? j : j - ny_; }

  double kx(int i) const noexcept { return mode_x(i) * (2.0 * std::numbers::pi / lx_); }
  double ky(int j) const noexcept { return mode_y(j) * (2.0 * std::numbers::pi / ly_); }
  double kabs(int i, int j) const noexcept { return std::hypot(kx(i), ky(j)); }

  // Wavenumbers for odd (derivative-type) multipliers: the Nyquist
  // row/column has no partner under k -> -k, so it is zeroed.
  double kx_odd(int i) const noexcept { return i == nx_ / 2 ? 0.0 : kx(i); }
  double ky_odd(int j) const noexcept { return j == ny_ / 2 ? 0.0 : ky(j); }

  double kmax() const noexcept { return kabs(nx_ / 2, ny_ / 2); }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  int nx_;
  int ny_;
  double lx_;
  double ly_;
};

}  // namespace rotwave
