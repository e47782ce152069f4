#include "rotwave/vorticity.hpp"

#include <cmath>
#include <numbers>

#include "rotwave/error.hpp"
#include "rotwave/spectral.hpp"

namespace rotwave {

VorticityTrace VorticityTrace::zero(const Grid2D& grid, double t) {
  return VorticityTrace{VectorField(grid), t};
}

bool VorticityTrace::is_zero() const {
  for (std::size_t k = 0; k < v_omega.x.size(); ++k)
    if (v_omega.x[k] != 0.0 || v_omega.y[k] != 0.0) return false;
  return true;
}

RealField b_omega(const RealField& h, const VorticityTrace& trace) {
  require_same_grid(h.grid(), trace.v_omega.grid(), "b_omega");
  const VectorField gh = grad(h);
  return pointwise(gh.x, trace.v_omega.x) + pointwise(gh.y, trace.v_omega.y);
}

VectorField u_omega(const RealField& h, const VorticityTrace& trace) {
  require_same_grid(h.grid(), trace.v_omega.grid(), "u_omega");
  const VectorField gh = grad(h);
  VectorField u = trace.v_omega;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double b = gh.x[k] * trace.v_omega.x[k] + gh.y[k] * trace.v_omega.y[k];
    u.x[k] += gh.x[k] * b;
    u.y[k] += gh.y[k] * b;
  }
  return u;
}

RealField curl_residual(const RealField& h, const VorticityTrace& trace,
                        const RealField& omega_n) {
  require_same_grid(h.grid(), omega_n.grid(), "curl_residual");
  const VectorField u = u_omega(h, trace);
  SpectralField c = derivative(forward(u.y), Axis::x1);
  c -= derivative(forward(u.x), Axis::x2);
  return inverse(c) - omega_n;
}

RealField recover_a_omega(const RealField& h, const VorticityTrace& trace, double tolerance) {
  const Grid2D& g = h.grid();
  const VectorField u = u_omega(h, trace);
  const SpectralField ux = forward(u.x), uy = forward(u.y);
  SpectralField curl = derivative(uy, Axis::x1);
  curl -= derivative(ux, Axis::x2);
  const double res = inverse(curl).max_abs();
  if (!(res <= tolerance))
    throw ConstraintViolation("vorticity trace is not admissible: surface curl residual " +
                                  fmt(res) + " exceeds " +
                                  fmt(tolerance),
                              res);
  SpectralField a = derivative(ux, Axis::x1);
  a += derivative(uy, Axis::x2);
  a.apply([&](int i, int j) {
    const double k = g.kabs(i, j);
    return Complex(k > 0.0 ? -1.0 / (k * k) : 0.0, 0.0);
  });
  return inverse(a);
}

std::string to_string(AnalyticFamily f) {
  switch (f) {
    case AnalyticFamily::gradient_cosine: return "gradient-cosine";
    case AnalyticFamily::gradient_gaussian: return "gradient-gaussian";
    case AnalyticFamily::stream_cosine: return "stream-cosine";
  }
  return "?";
}

AnalyticFamily analytic_family_from_string(const std::string& name) {
  if (name == "gradient-cosine") return AnalyticFamily::gradient_cosine;
  if (name == "gradient-gaussian") return AnalyticFamily::gradient_gaussian;
  if (name == "stream-cosine") return AnalyticFamily::stream_cosine;
  throw ConfigError("unknown analytic vorticity family '" + name +
                    "' (expected gradient-cosine, gradient-gaussian or stream-cosine)");
}

VorticityProvider VorticityProvider::zero(const Grid2D& grid) {
  return VorticityProvider(grid, Zero{});
}

VorticityProvider VorticityProvider::from_trace(VectorField v_omega) {
  const Grid2D g = v_omega.grid();
  if (!v_omega.x.all_finite() || !v_omega.y.all_finite())
    throw ConfigError("static vorticity trace has non-finite entries");
  return VorticityProvider(g, Static{std::move(v_omega)});
}

VorticityProvider VorticityProvider::analytic(const Grid2D& grid, const AnalyticSpec& spec,
                                              bool require_admissible) {
  if (!std::isfinite(spec.amplitude) || !std::isfinite(spec.frequency))
    throw ConfigError("analytic vorticity: amplitude and frequency must be finite");
  if (spec.family == AnalyticFamily::gradient_gaussian && !(spec.width > 0.0))
    throw ConfigError("analytic vorticity: gaussian width must be positive");
  if (spec.family != AnalyticFamily::gradient_gaussian && spec.mode.is_zero())
    throw ConfigError("analytic vorticity: cosine families need a nonzero mode");
  VorticityProvider p(grid, spec);
  if (require_admissible) {
    const double t0[] = {0.0};
    p.check_admissible(RealField(grid), t0);
  }
  return p;
}

ProviderKind VorticityProvider::kind() const noexcept {
  if (std::holds_alternative<Zero>(impl_)) return ProviderKind::zero;
  if (std::holds_alternative<Static>(impl_)) return ProviderKind::static_trace;
  return ProviderKind::analytic;
}

namespace {

struct Prescribed {
  VectorField u;      // prescribed U_omega
  RealField omega_n;  // its curl
};

Prescribed prescribe(const Grid2D& g, const AnalyticSpec& s, double t) {
  Prescribed p{VectorField(g), RealField(g)};
  const double kx = s.mode.kx(g), ky = s.mode.ky(g);
  const double k2 = kx * kx + ky * ky;
  const double cx = 0.5 * g.lx(), cy = 0.5 * g.ly();
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const std::size_t n = g.index(i, j);
      const double x1 = g.x(i), x2 = g.y(j);
      switch (s.family) {
        case AnalyticFamily::gradient_cosine: {
          // a = A cos(k.x - w t)
          const double sn = std::sin(kx * x1 + ky * x2 - s.frequency * t);
          p.u.x[n] = -s.amplitude * kx * sn;
          p.u.y[n] = -s.amplitude * ky * sn;
          break;
        }
        case AnalyticFamily::gradient_gaussian: {
          // a = A exp((cos s1 - 1)/w^2 + (cos s2 - 1)/w^2) cos(w t), s = 2 pi (x - c)/L:
          // a periodic bump, close to a gaussian of width w L/(2 pi) when w is small.
          const double w2 = s.width * s.width;
          const double s1 = 2.0 * std::numbers::pi * (x1 - cx) / g.lx();
          const double s2 = 2.0 * std::numbers::pi * (x2 - cy) / g.ly();
          const double a = s.amplitude *
                           std::exp((std::cos(s1) - 1.0) / w2 + (std::cos(s2) - 1.0) / w2) *
                           std::cos(s.frequency * t);
          p.u.x[n] = -a * std::sin(s1) / w2 * (2.0 * std::numbers::pi / g.lx());
          p.u.y[n] = -a * std::sin(s2) / w2 * (2.0 * std::numbers::pi / g.ly());
          break;
        }
        case AnalyticFamily::stream_cosine: {
          // psi = A cos(k.x - w t), U = (-d2 psi, d1 psi), curl U = Lap psi
          const double th = kx * x1 + ky * x2 - s.frequency * t;
          const double sn = std::sin(th);
          p.u.x[n] = s.amplitude * ky * sn;
          p.u.y[n] = -s.amplitude * kx * sn;
          p.omega_n[n] = -k2 * s.amplitude * std::cos(th);
          break;
        }
      }
    }
  }
  return p;
}

}  // namespace

ProviderSample VorticityProvider::sample(double t, const RealField& h) const {
  require_same_grid(grid_, h.grid(), "VorticityProvider::sample");
  if (std::holds_alternative<Zero>(impl_))
    return ProviderSample{VorticityTrace::zero(grid_, t), RealField(grid_)};
  if (const auto* st = std::get_if<Static>(&impl_))
    return ProviderSample{VorticityTrace{st->v, t}, RealField(grid_)};

  const auto& spec = std::get<AnalyticSpec>(impl_);
  Prescribed p = prescribe(grid_, spec, t);
  // V = (I + grad h grad h^T)^{-1} U
  const VectorField gh = grad(h);
  VectorField v = p.u;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double g2 = gh.x[k] * gh.x[k] + gh.y[k] * gh.y[k];
    const double b = (gh.x[k] * p.u.x[k] + gh.y[k] * p.u.y[k]) / (1.0 + g2);
    v.x[k] -= gh.x[k] * b;
    v.y[k] -= gh.y[k] * b;
  }
  return ProviderSample{VorticityTrace{std::move(v), t}, std::move(p.omega_n)};
}

double VorticityProvider::check_admissible(const RealField& h, std::span<const double> times,
                                           double tolerance) const {
  double worst = 0.0;
  const RealField none(grid_);
  for (double t : times) {
    const double r = curl_residual(h, trace(t, h), none).max_abs();
    worst = std::max(worst, r);
    if (!(r <= tolerance))
      throw ConstraintViolation("vorticity provider is not admissible at t = " +
                                    fmt(t) + ": surface curl residual " +
                                    fmt(r),
                                r);
  }
  return worst;
}

}  // namespace rotwave
