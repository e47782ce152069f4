#include "rotwave/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rotwave/error.hpp"

namespace rotwave {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid2D::Grid2D(int nx, int ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (nx < 8 || ny < 8 || !is_pow2(nx) || !is_pow2(ny))
    throw ConfigError("grid: nx and ny must be powers of two >= 8 (got " +
                      std::to_string(nx) + "x" + std::to_string(ny) + ")");
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
    throw ConfigError("grid: lx and ly must be positive and finite");
}

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* where) {
  if (!(a == b))
    throw ConfigError(std::string(where) + ": grid mismatch (" +
                      std::to_string(a.nx()) + "x" + std::to_string(a.ny()) +
                      " vs " + std::to_string(b.nx()) + "x" +
                      std::to_string(b.ny()) + ")");
}

// RealField

RealField::RealField(const Grid2D& grid) : grid_(grid), values_(grid.size(), 0.0) {}

RealField::RealField(const Grid2D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw ConfigError("RealField: value count does not match grid");
}

RealField RealField::from_function(const Grid2D& grid,
                                   const std::function<double(double, double)>& f) {
  RealField out(grid);
  for (int i = 0; i < grid.nx(); ++i)
    for (int j = 0; j < grid.ny(); ++j) out(i, j) = f(grid.x(i), grid.y(j));
  return out;
}

RealField RealField::constant(const Grid2D& grid, double c) {
  return RealField(grid, std::vector<double>(grid.size(), c));
}

double RealField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double RealField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double RealField::integral() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * grid_.cell_area();
}

bool RealField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

RealField& RealField::operator+=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "RealField +=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "RealField -=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
  return *this;
}

RealField& RealField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator-(RealField a) { return a *= -1.0; }
RealField operator*(RealField a, double s) { return a *= s; }
RealField operator*(double s, RealField a) { return a *= s; }

RealField pointwise(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "pointwise");
  RealField out(a.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

double inner(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * a.grid().cell_area();
}

// VectorField

VectorField::VectorField(RealField x_, RealField y_) : x(std::move(x_)), y(std::move(y_)) {
  require_same_grid(x.grid(), y.grid(), "VectorField");
}

double VectorField::max_abs() const { return std::max(x.max_abs(), y.max_abs()); }

VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField(a.x + b.x, a.y + b.y);
}

VectorField operator*(const VectorField& a, double s) {
  return VectorField(a.x * s, a.y * s);
}

// ComplexField

ComplexField::ComplexField(const Grid2D& grid)
    : grid_(grid), values_(grid.size(), Complex(0.0, 0.0)) {}

ComplexField::ComplexField(const RealField& re, const RealField& im)
    : grid_(re.grid()), values_(re.size()) {
  require_same_grid(re.grid(), im.grid(), "ComplexField");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] = Complex(re[k], im[k]);
}

RealField ComplexField::real() const {
  RealField out(grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) out[k] = values_[k].real();
  return out;
}

RealField ComplexField::imag() const {
  RealField out(grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) out[k] = values_[k].imag();
  return out;
}

double ComplexField::max_abs() const {
  double m = 0.0;
  for (const Complex& v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
  require_same_grid(grid_, o.grid_, "ComplexField +=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

ComplexField& ComplexField::operator*=(Complex s) {
  for (Complex& v : values_) v *= s;
  return *this;
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) {
  require_same_grid(a.grid(), b.grid(), "ComplexField -");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}
ComplexField operator*(ComplexField a, Complex s) { return a *= s; }

// SpectralField

SpectralField::SpectralField(const Grid2D& grid)
    : grid_(grid), coeffs_(grid.size(), Complex(0.0, 0.0)) {}

SpectralField::SpectralField(const Grid2D& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size())
    throw ConfigError("SpectralField: coefficient count does not match grid");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "SpectralField +=");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "SpectralField -=");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
  for (Complex& c : coeffs_) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(SpectralField a, Complex s) { return a *= s; }

}  // namespace rotwave
