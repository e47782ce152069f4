#pragma once

#include <vector>

#include "rotwave/field.hpp"

namespace rotwave {

enum class Axis { x1 = 1, x2 = 2 };

// Unnormalized forward transform; inverse divides by nx*ny.
SpectralField forward(const RealField& f);
SpectralField forward(const ComplexField& f);
// Real part of the inverse transform (exact for Hermitian spectra).
RealField inverse(const SpectralField& F);
ComplexField inverse_complex(const SpectralField& F);

// Fourier multipliers acting on coefficients. The k = 0 coefficient is
// sent to zero by every multiplier that is singular or vanishing there.
SpectralField lambda_pow(SpectralField F, double s);
// Real-valued Riesz transform, multiplier -i k_axis / |k|, so that
// riesz(d/dx1) + riesz(d/dx2) = Lambda.
SpectralField riesz(SpectralField F, Axis axis);
SpectralField derivative(SpectralField F, Axis axis);
// 2/3 rule: keeps |k_i| <= n_i/3 lattice units.
SpectralField dealias(SpectralField F);
bool in_dealias_band(const Grid2D& grid, int i, int j) noexcept;

RealField lambda_pow(const RealField& f, double s);
RealField riesz(const RealField& f, Axis axis);
VectorField grad(const RealField& f);
RealField div(const VectorField& v);
RealField dealias(const RealField& f);

// P(a*b) with P the 2/3 projection (plain a*b if dealias is false).
RealField product(const RealField& a, const RealField& b, bool dealias = true);
// P(Pa * Pb): exact projection of the product whatever the input spectra.
RealField dealiased_product(const RealField& a, const RealField& b);

// Integral of |f|^2 over the box computed from the coefficients.
double l2_norm_sq(const SpectralField& F);

// |k|^s on the full lattice (0 at k = 0), cached per grid.
const std::vector<double>& wavenumber_power(const Grid2D& grid, double s);

// Plan cache statistics, exposed for tests.
std::size_t fft_plan_count();

}  // namespace rotwave
