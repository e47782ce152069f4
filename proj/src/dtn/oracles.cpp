#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "rotwave/dtn.hpp"
#include "rotwave/error.hpp"
#include "rotwave/spectral.hpp"

namespace rotwave {

namespace {

// cosh(a) / cosh(b) without overflow, a, b >= 0.
double cosh_ratio(double a, double b) {
  return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
}

double sinh_cosh_ratio(double a, double b) {
  return std::exp(a - b) * (1.0 - std::exp(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
}

}  // namespace

DtnSample dtn_oracle_exact(const RealField& h, LatticeMode k, double depth) {
  if (k.is_zero()) throw InvalidInput("dtn_oracle_exact: wavevector must be nonzero");
  const Grid2D& g = h.grid();
  const double kx = k.kx(g), ky = k.ky(g), kk = k.kabs(g);
  const VectorField gh = grad(h);
  const bool infinite = std::isinf(depth);
  if (!infinite && !(depth > 0.0))
    throw InvalidInput("dtn_oracle_exact: depth must be positive");

  DtnSample out{RealField(g), RealField(g)};
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const std::size_t n = g.index(i, j);
      const Complex wave = std::polar(1.0, kx * g.x(i) + ky * g.y(j));
      const Complex slope(0.0, -(kx * gh.x[n] + ky * gh.y[n]));
      if (infinite) {
        const Complex e = wave * std::exp(kk * h[n]);
        out.phi[n] = e.real();
        out.gphi[n] = ((kk + slope) * e).real();
      } else {
        if (h[n] + depth <= 0.0)
          throw InvalidInput("dtn_oracle_exact: surface below the bottom");
        const double c = cosh_ratio(kk * (h[n] + depth), kk * depth);
        const double s = sinh_cosh_ratio(kk * (h[n] + depth), kk * depth);
        out.phi[n] = (wave * c).real();
        out.gphi[n] = (wave * (kk * s + slope * c)).real();
      }
    }
  }
  return out;
}

namespace {

// Column-stacked level fields: level l occupies [l*n, (l+1)*n).
using Levels = std::vector<double>;

double dot(const Levels& a, const Levels& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const Levels& a) { return std::sqrt(dot(a, a)); }

RealField level(const Grid2D& g, const Levels& v, int l) {
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  return RealField(g, std::vector<double>(v.begin() + l * n, v.begin() + (l + 1) * n));
}

// Transformed Laplacian in (x, s) with z + depth = s D(x):
//   lap = Lap_x - 2 sigma . grad_x d_s + (|sigma|^2 + D^-2) d_ss + c_s d_s,
//   sigma = s grad D / D,  c_s = -s Lap D / D + 2 s |grad D|^2 / D^2.
class StripProblem {
 public:
  StripProblem(const RealField& h, double depth, int levels)
      : g_(h.grid()), levels_(levels), ds_(1.0 / levels), d_(h + RealField::constant(h.grid(), depth)),
        gd_(grad(h)), lapd_(div(grad(h))), mean_depth_(d_.mean()) {}

  const Grid2D& grid() const { return g_; }
  int levels() const { return levels_; }
  double ds() const { return ds_; }
  const RealField& depth_field() const { return d_; }
  double mean_depth() const { return mean_depth_; }

  // Pointwise combination of the pieces of the transformed Laplacian at
  // level l: given w, w_x-Laplacian, grad(w_s), w_s, w_ss.
  void combine(int l, const RealField& lapx, const VectorField& gws, const RealField& ws,
               const RealField& wss, double* out) const {
    const double s = l * ds_;
    for (std::size_t n = 0; n < g_.size(); ++n) {
      const double D = d_[n];
      const double sx = s * gd_.x[n] / D, sy = s * gd_.y[n] / D;
      const double g2 = gd_.x[n] * gd_.x[n] + gd_.y[n] * gd_.y[n];
      const double css = sx * sx + sy * sy + 1.0 / (D * D);
      const double cs = -s * lapd_[n] / D + 2.0 * s * g2 / (D * D);
      out[n] = lapx[n] - 2.0 * (sx * gws.x[n] + sy * gws.y[n]) + css * wss[n] + cs * ws[n];
    }
  }

  // Discrete operator on the correction w (levels 0..L-1, w_L = 0,
  // mirrored ghost level below the bottom).
  Levels apply(const Levels& w) const {
    const auto n = g_.size();
    const int L = levels_;
    auto at = [&](int l) -> const double* { return w.data() + l * n; };
    Levels out(w.size());
    RealField ws(g_), wss(g_);
    for (int l = 0; l < L; ++l) {
      const double* c = at(l);
      const double* up = l + 1 < L ? at(l + 1) : nullptr;
      const double* dn = l > 0 ? at(l - 1) : up;
      for (std::size_t k = 0; k < n; ++k) {
        const double u = up ? up[k] : 0.0;
        const double d = dn ? dn[k] : 0.0;
        ws[k] = l == 0 ? 0.0 : (u - d) / (2.0 * ds_);
        wss[k] = (u - 2.0 * c[k] + d) / (ds_ * ds_);
      }
      const RealField wl = level(g_, w, l);
      const RealField lapx = -lambda_pow(wl, 2.0);
      const VectorField gws = grad(ws);
      combine(l, lapx, gws, ws, wss, out.data() + l * n);
    }
    return out;
  }

  // Per-mode tridiagonal solve of the flat operator at the mean depth.
  Levels precondition(const Levels& r) const {
    const auto n = g_.size();
    const int L = levels_;
    std::vector<SpectralField> spec;
    spec.reserve(L);
    for (int l = 0; l < L; ++l) spec.push_back(forward(level(g_, r, l)));
    const double a = 1.0 / (mean_depth_ * mean_depth_ * ds_ * ds_);
    std::vector<double> cp(L);
    std::vector<Complex> dp(L);
    for (std::size_t m = 0; m < n; ++m) {
      const int i = static_cast<int>(m / g_.ny()), j = static_cast<int>(m % g_.ny());
      const double k2 = g_.kabs(i, j) * g_.kabs(i, j);
      // rows: l = 0: b w0 + 2a w1; l >= 1: a w_{l-1} + b w_l + a w_{l+1}
      const double b = -k2 - 2.0 * a;
      double denom = b;
      cp[0] = 2.0 * a / denom;
      dp[0] = spec[0][m] / denom;
      for (int l = 1; l < L; ++l) {
        denom = b - a * cp[l - 1];
        cp[l] = l + 1 < L ? a / denom : 0.0;
        dp[l] = (spec[l][m] - a * dp[l - 1]) / denom;
      }
      spec[L - 1][m] = dp[L - 1];
      for (int l = L - 2; l >= 0; --l) {
        dp[l] -= cp[l] * dp[l + 1];
        spec[l][m] = dp[l];
      }
    }
    Levels out(r.size());
    for (int l = 0; l < L; ++l) {
      const RealField f = inverse(spec[l]);
      std::copy(f.values().begin(), f.values().end(), out.begin() + l * n);
    }
    return out;
  }

 private:
  Grid2D g_;
  int levels_;
  double ds_;
  RealField d_;
  VectorField gd_;
  RealField lapd_;
  double mean_depth_;
};

}  // namespace

StripReport dtn_oracle_strip_report(const RealField& h, const RealField& phi, double depth,
                                    int levels, const StripOptions& opts) {
  require_same_grid(h.grid(), phi.grid(), "dtn_oracle_strip");
  if (levels < 32)
    throw InvalidInput("dtn_oracle_strip: need at least 32 levels, got " +
                       std::to_string(levels));
  if (!(depth > 0.0) || depth < 5.0 * h.max_abs())
    throw InvalidInput("dtn_oracle_strip: depth must be >= 5 max|h|");

  const StripProblem prob(h, depth, levels);
  const Grid2D& g = prob.grid();
  const auto n = g.size();
  const double ds = prob.ds();
  const double dbar = prob.mean_depth();

  // Lift: L(x, s) = sum_k phi_k cosh(|k| dbar s)/cosh(|k| dbar) e^{ik.x},
  // harmonic when h is flat; only w = psi - L is discretized.
  const SpectralField phi_hat = forward(phi);
  auto lift = [&](double s, int deriv) {
    SpectralField F = phi_hat;
    F.apply([&](int i, int j) {
      const double kd = g.kabs(i, j) * dbar;
      if (kd == 0.0) return Complex(deriv == 0 ? 1.0 : 0.0, 0.0);
      switch (deriv) {
        case 0: return Complex(cosh_ratio(kd * s, kd), 0.0);
        case 1: return Complex(kd * sinh_cosh_ratio(kd * s, kd), 0.0);
        default: return Complex(kd * kd * cosh_ratio(kd * s, kd), 0.0);
      }
    });
    return F;
  };

  Levels rhs(n * levels);
  for (int l = 0; l < levels; ++l) {
    const double s = l * ds;
    const SpectralField L0 = lift(s, 0), L1 = lift(s, 1), L2 = lift(s, 2);
    const RealField lapx = inverse(lambda_pow(L0, 2.0)) * -1.0;
    const VectorField gls(inverse(derivative(L1, Axis::x1)), inverse(derivative(L1, Axis::x2)));
    prob.combine(l, lapx, gls, inverse(L1), inverse(L2), rhs.data() + l * n);
  }
  for (double& v : rhs) v = -v;

  // Right-preconditioned BiCGSTAB.
  StripReport report{RealField(g)};
  Levels x(rhs.size(), 0.0);
  const double bnorm = norm2(rhs);
  if (bnorm > 0.0) {
    Levels r = rhs, rhat = rhs, p(rhs.size(), 0.0), v(rhs.size(), 0.0);
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    double rel = 1.0;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
      const double rho_new = dot(rhat, r);
      if (rho_new == 0.0) break;
      const double beta = (rho_new / rho) * (alpha / omega);
      for (std::size_t k = 0; k < p.size(); ++k) p[k] = r[k] + beta * (p[k] - omega * v[k]);
      const Levels phat = prob.precondition(p);
      v = prob.apply(phat);
      alpha = rho_new / dot(rhat, v);
      Levels s(r.size());
      for (std::size_t k = 0; k < s.size(); ++k) s[k] = r[k] - alpha * v[k];
      if (norm2(s) / bnorm < opts.tolerance) {
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += alpha * phat[k];
        r = s;
        rel = norm2(s) / bnorm;
        ++it;
        break;
      }
      const Levels shat = prob.precondition(s);
      const Levels t = prob.apply(shat);
      omega = dot(t, s) / dot(t, t);
      for (std::size_t k = 0; k < x.size(); ++k) x[k] += alpha * phat[k] + omega * shat[k];
      for (std::size_t k = 0; k < r.size(); ++k) r[k] = s[k] - omega * t[k];
      rho = rho_new;
      rel = norm2(r) / bnorm;
      if (rel < opts.tolerance) {
        ++it;
        break;
      }
    }
    // Recompute the true residual; the recursive one drifts.
    const Levels ax = prob.apply(x);
    double res = 0.0;
    for (std::size_t k = 0; k < ax.size(); ++k) res += (rhs[k] - ax[k]) * (rhs[k] - ax[k]);
    rel = std::sqrt(res) / bnorm;
    report.iterations = it;
    report.residual = rel;
    if (!(rel < opts.tolerance))
      throw NumericError("dtn_oracle_strip: BiCGSTAB did not converge (relative residual " +
                             std::to_string(rel) + " after " + std::to_string(it) +
                             " iterations)",
                         rel);
  }

  // One-sided second-order d_s at the surface (w = 0 there).
  const int L = levels;
  const RealField ls_top = inverse(lift(1.0, 1));
  const VectorField gh = grad(h);
  const VectorField gphi = grad(phi);
  const RealField& D = prob.depth_field();
  for (std::size_t k = 0; k < n; ++k) {
    const double wm1 = x[(L - 1) * n + k];
    const double wm2 = x[(L - 2) * n + k];
    const double ws = (-4.0 * wm1 + wm2) / (2.0 * ds);
    const double psis = ls_top[k] + ws;
    const double g2 = gh.x[k] * gh.x[k] + gh.y[k] * gh.y[k];
    report.gphi[k] = (1.0 + g2) * psis / D[k] - (gh.x[k] * gphi.x[k] + gh.y[k] * gphi.y[k]);
  }
  return report;
}

RealField dtn_oracle_strip(const RealField& h, const RealField& phi, double depth, int levels,
                           const StripOptions& opts) {
  return dtn_oracle_strip_report(h, phi, depth, levels, opts).gphi;
}

}  // namespace rotwave
