#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "rotwave/grid.hpp"

namespace rotwave {

using Complex = std::complex<double>;

// Samples of a real scalar on the grid (h, phi_omega, a_omega, ...).
class RealField {
 public:
  explicit RealField(const Grid2D& grid);
  RealField(const Grid2D& grid, std::vector<double> values);

  // Samples f(x1, x2) at the grid nodes.
  static RealField from_function(const Grid2D& grid,
                                 const std::function<double(double, double)>& f);
  static RealField constant(const Grid2D& grid, double c);

  const Grid2D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double max_abs() const;
  double mean() const;
  // Grid sum times cell area.
  double integral() const;
  bool all_finite() const;

  RealField& operator+=(const RealField& o);
  RealField& operator-=(const RealField& o);
  RealField& operator*=(double s);

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator-(RealField a);
RealField operator*(RealField a, double s);
RealField operator*(double s, RealField a);
// Pointwise product, no dealiasing (see spectral.hpp for the dealiased one).
RealField pointwise(const RealField& a, const RealField& b);
double inner(const RealField& a, const RealField& b);  // integral of a*b

struct VectorField {
  RealField x;
  RealField y;

  explicit VectorField(const Grid2D& grid) : x(grid), y(grid) {}
  VectorField(RealField x_, RealField y_);

  const Grid2D& grid() const noexcept { return x.grid(); }
  double max_abs() const;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(const VectorField& a, double s);

// Complex samples in physical space; carries the dispersive variable u.
class ComplexField {
 public:
  explicit ComplexField(const Grid2D& grid);
  ComplexField(const RealField& re, const RealField& im);

  const Grid2D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  Complex& operator[](std::size_t k) { return values_[k]; }
  const Complex& operator[](std::size_t k) const { return values_[k]; }
  std::span<Complex> values() noexcept { return values_; }
  std::span<const Complex> values() const noexcept { return values_; }

  RealField real() const;
  RealField imag() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexField& operator+=(const ComplexField& o);
  ComplexField& operator*=(Complex s);

 private:
  Grid2D grid_;
  std::vector<Complex> values_;
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);
ComplexField operator*(ComplexField a, Complex s);

// Fourier coefficients on the full nx x ny lattice, unnormalized forward
// convention: coeff(k) = sum_x f(x) exp(-i k.x).
class SpectralField {
 public:
  explicit SpectralField(const Grid2D& grid);
  SpectralField(const Grid2D& grid, std::vector<Complex> coeffs);

  const Grid2D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  Complex& operator()(int i, int j) { return coeffs_[grid_.index(i, j)]; }
  const Complex& operator()(int i, int j) const { return coeffs_[grid_.index(i, j)]; }
  Complex& operator[](std::size_t k) { return coeffs_[k]; }
  const Complex& operator[](std::size_t k) const { return coeffs_[k]; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(Complex s);

  // Multiply coefficient (i, j) by m(i, j).
  template <class Multiplier>
  SpectralField& apply(Multiplier&& m) {
    for (int i = 0; i < grid_.nx(); ++i)
      for (int j = 0; j < grid_.ny(); ++j) coeffs_[grid_.index(i, j)] *= m(i, j);
    return *this;
  }

 private:
  Grid2D grid_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(SpectralField a, Complex s);

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* where);

}  // namespace rotwave
