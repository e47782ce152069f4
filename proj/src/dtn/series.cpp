#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rotwave/dtn.hpp"
#include "rotwave/error.hpp"
#include "rotwave/fit.hpp"
#include "rotwave/spectral.hpp"

namespace rotwave {

DtnOrder::DtnOrder(int order) : order_(order) {
  if (order < 0 || order > max_order)
    throw ConfigError("dtn order must be in [0, " + std::to_string(max_order) +
                      "], got " + std::to_string(order));
}

double LatticeMode::kx(const Grid2D& g) const { return m1 * 2.0 * std::numbers::pi / g.lx(); }
double LatticeMode::ky(const Grid2D& g) const { return m2 * 2.0 * std::numbers::pi / g.ly(); }
double LatticeMode::kabs(const Grid2D& g) const { return std::hypot(kx(g), ky(g)); }

namespace {

// Expansion of G(h)[e^{ik.x} e^{|k|h}] = (|k| - i k.grad h) e^{ik.x} e^{|k|h}
// in powers of h gives, degree by degree,
//   G_j phi = -div(h^j/j! grad Lambda^{j-1} phi)
//             - sum_{l=1..j} G_{j-l}[ h^l/l! Lambda^l phi ].
class Series {
 public:
  Series(const RealField& h, int order, bool dealias) : dealias_(dealias) {
    powers_.reserve(order + 1);
    powers_.push_back(RealField::constant(h.grid(), 1.0));
    if (order >= 1) powers_.push_back(dealias ? rotwave::dealias(h) : h);
    for (int l = 2; l <= order; ++l) {
      RealField next = product(powers_.back(), powers_[1], dealias);
      next *= 1.0 / l;
      powers_.push_back(std::move(next));
    }
  }

  SpectralField term(const SpectralField& phi, int j) const {
    if (j == 0) return lambda_pow(phi, 1.0);
    const SpectralField lam = band(lambda_pow(phi, j - 1.0));
    SpectralField out =
        derivative(times(powers_[j], inverse(derivative(lam, Axis::x1))), Axis::x1);
    out += derivative(times(powers_[j], inverse(derivative(lam, Axis::x2))), Axis::x2);
    out *= -1.0;
    for (int l = 1; l <= j; ++l) {
      const SpectralField w = times(powers_[l], inverse(band(lambda_pow(phi, l))));
      out -= term(w, j - l);
    }
    return out;
  }

 private:
  SpectralField band(SpectralField F) const {
    return dealias_ ? rotwave::dealias(std::move(F)) : F;
  }
  SpectralField times(const RealField& a, const RealField& b) const {
    return band(forward(pointwise(a, b)));
  }

  bool dealias_;
  std::vector<RealField> powers_;  // h^l / l!, l = 0..order
};

}  // namespace

RealField dtn_apply(const RealField& h, const RealField& phi, DtnOrder order, bool dealias) {
  require_same_grid(h.grid(), phi.grid(), "dtn_apply");
  const Series series(h, order.value(), dealias);
  const SpectralField phi_hat = forward(phi);
  SpectralField out = series.term(phi_hat, 0);
  for (int j = 1; j <= order.value(); ++j) out += series.term(phi_hat, j);
  return inverse(out);
}

RealField dtn_term(const RealField& h, const RealField& phi, int j, bool dealias) {
  require_same_grid(h.grid(), phi.grid(), "dtn_term");
  const DtnOrder order(j);
  const Series series(h, order.value(), dealias);
  return inverse(series.term(forward(phi), j));
}

RealField g2_apply(const RealField& h, const RealField& phi, bool dealias) {
  require_same_grid(h.grid(), phi.grid(), "g2_apply");
  const RealField hb = dealias ? rotwave::dealias(h) : h;
  const VectorField gphi = grad(phi);
  const VectorField flux(product(hb, gphi.x, dealias), product(hb, gphi.y, dealias));
  return -div(flux) - lambda_pow(product(hb, lambda_pow(phi, 1.0), dealias), 1.0);
}

// The sign is opposite to some typeset versions of this term; only this
// one reproduces the exact harmonic family (see tests/test_dtn.cpp).
RealField g3_apply(const RealField& h, const RealField& phi, bool dealias) {
  require_same_grid(h.grid(), phi.grid(), "g3_apply");
  const RealField hb = dealias ? rotwave::dealias(h) : h;
  const RealField h2 = product(hb, hb, dealias);
  const RealField lphi = lambda_pow(phi, 1.0);
  RealField out = -0.5 * lambda_pow(product(h2, lambda_pow(phi, 2.0), dealias), 1.0);
  out -= 0.5 * lambda_pow(product(h2, lphi, dealias), 2.0);
  out += lambda_pow(product(hb, lambda_pow(product(hb, lphi, dealias), 1.0), dealias), 1.0);
  return out;
}

ConvergenceStudy dtn_convergence_study(const Grid2D& grid, std::span<const double> eps,
                                       DtnOrder order, LatticeMode k) {
  if (eps.size() < 3)
    throw InvalidInput("dtn convergence: need at least 3 amplitudes, got " +
                       std::to_string(eps.size()));
  ConvergenceStudy study;
  for (double e : eps) {
    if (!(e > 0.0)) throw InvalidInput("dtn convergence: amplitudes must be positive");
    const RealField h =
        RealField::from_function(grid, [e](double x1, double) { return e * std::cos(x1); });
    const DtnSample exact = dtn_oracle_exact(h, k);
    const RealField err = dtn_apply(h, exact.phi, order) - exact.gphi;
    study.eps.push_back(e);
    study.errors.push_back(err.max_abs());
  }
  study.slope = loglog_slope(study.eps, study.errors);
  return study;
}

double dtn_convergence_order(const Grid2D& grid, std::span<const double> eps,
                             DtnOrder order, LatticeMode k) {
  return dtn_convergence_study(grid, eps, order, k).slope;
}

}  // namespace rotwave
