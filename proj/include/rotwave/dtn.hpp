#pragma once

#include <limits>
#include <span>
#include <vector>

#include "rotwave/field.hpp"

namespace rotwave {

// Highest power of h kept in the expansion of G(h):
// 0 -> Lambda, 1 -> + (linear in h), 2 -> + (quadratic in h), ...
class DtnOrder {
 public:
  static constexpr int max_order = 6;
  explicit DtnOrder(int order);
  int value() const noexcept { return order_; }
  friend bool operator==(DtnOrder, DtnOrder) = default;

 private:
  int order_;
};

// Lattice wavevector (m1, m2); physical k = (2 pi m1 / lx, 2 pi m2 / ly).
struct LatticeMode {
  int m1 = 1;
  int m2 = 0;
  bool is_zero() const noexcept { return m1 == 0 && m2 == 0; }
  double kx(const Grid2D& g) const;
  double ky(const Grid2D& g) const;
  double kabs(const Grid2D& g) const;
};

// Truncated series sum_{j <= order} G_j(h) phi for the rescaled
// Dirichlet-to-Neumann operator sqrt(1 + |grad h|^2) d_n on an infinitely
// deep fluid below z = h(x).
RealField dtn_apply(const RealField& h, const RealField& phi, DtnOrder order,
                    bool dealias = true);

// The single term of degree j in h (j = 0 gives Lambda phi).
RealField dtn_term(const RealField& h, const RealField& phi, int j, bool dealias = true);

// Closed forms of the first two corrections:
//   g2 = -div(h grad phi) - Lambda(h Lambda phi)
//   g3 = -1/2 Lambda(h^2 Lambda^2 phi) - 1/2 Lambda^2(h^2 Lambda phi)
//        + Lambda(h Lambda(h Lambda phi))
RealField g2_apply(const RealField& h, const RealField& phi, bool dealias = true);
RealField g3_apply(const RealField& h, const RealField& phi, bool dealias = true);

struct DtnSample {
  RealField phi;
  RealField gphi;
};

// Exact pair (phi, G(h) phi) from the harmonic family
// e^{ik.x} e^{|k| z} (or cosh(|k|(z + depth)) e^{ik.x} for finite depth),
// evaluated pointwise on the surface z = h(x).
DtnSample dtn_oracle_exact(const RealField& h, LatticeMode k,
                           double depth = std::numeric_limits<double>::infinity());

struct StripOptions {
  int max_iterations = 2000;
  double tolerance = 1e-10;  // relative residual of the linear solve
};

struct StripReport {
  RealField gphi;
  int iterations = 0;
  double residual = 0.0;
};

// Finite-depth Laplace solve on {-depth < z < h(x)} in the terrain-following
// coordinate s = (z + depth)/(h + depth), `levels` uniform intervals in s.
// Horizontal derivatives are spectral, vertical ones second-order centred.
StripReport dtn_oracle_strip_report(const RealField& h, const RealField& phi,
                                    double depth, int levels,
                                    const StripOptions& opts = {});
RealField dtn_oracle_strip(const RealField& h, const RealField& phi, double depth,
                           int levels, const StripOptions& opts = {});

struct ConvergenceStudy {
  std::vector<double> eps;
  std::vector<double> errors;  // max-norm error against dtn_oracle_exact
  double slope = 0.0;          // least-squares log-log slope
};

// h = eps cos(x1) for each eps; phi from the exact family with mode k.
ConvergenceStudy dtn_convergence_study(const Grid2D& grid, std::span<const double> eps,
                                       DtnOrder order, LatticeMode k);
double dtn_convergence_order(const Grid2D& grid, std::span<const double> eps,
                             DtnOrder order, LatticeMode k);

}  // namespace rotwave
