#include "rotwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotwave/error.hpp"
#include "rotwave/spectral.hpp"

namespace rotwave {

void BootstrapConfig::validate() const {
  if (!(eps0 > 0.0)) throw ConfigError("bootstrap.eps0 must be positive");
  if (!(eps1 >= 0.0)) throw ConfigError("bootstrap.eps1 must be >= 0");
  if (!(delta > 0.0 && delta <= 0.1)) throw ConfigError("bootstrap.delta must be in (0, 0.1]");
  if (!(iota > 0.0 && iota <= 0.1)) throw ConfigError("bootstrap.iota must be in (0, 0.1]");
  if (n_sobolev < 0 || n_sobolev > 32) throw ConfigError("bootstrap.n_sobolev must be in [0, 32]");
}

double w4inf_norm(const ComplexField& u) {
  const SpectralField U = forward(u);
  double best = 0.0;
  for (int order = 0; order <= 4; ++order) {
    for (int a = 0; a <= order; ++a) {
      SpectralField D = U;
      for (int n = 0; n < a; ++n) D = derivative(std::move(D), Axis::x1);
      for (int n = 0; n < order - a; ++n) D = derivative(std::move(D), Axis::x2);
      best = std::max(best, inverse_complex(D).max_abs());
    }
  }
  return best;
}

double hs_norm(const ComplexField& u, int n) {
  const Grid2D& g = u.grid();
  const SpectralField U = forward(u);
  const double scale = 1.0 / static_cast<double>(g.size());
  double s = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const double k = g.kabs(i, j);
      s += std::pow(1.0 + k * k, n) * std::norm(U(i, j) * scale);
    }
  }
  return std::sqrt(g.area() * s);
}

double weighted_profile_norm(const ComplexField& u, double t, double iota) {
  const Grid2D& g = u.grid();
  const ComplexField f = linear_propagate(u, -t);
  ComplexField wx(g), wy(g);
  const double cx = 0.5 * g.lx(), cy = 0.5 * g.ly();
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const std::size_t k = g.index(i, j);
      wx[k] = (g.x(i) - cx) * f[k];
      wy[k] = (g.y(j) - cy) * f[k];
    }
  }
  return std::sqrt(l2_norm_sq(lambda_pow(forward(wx), iota)) +
                   l2_norm_sq(lambda_pow(forward(wy), iota)));
}

DiagnosticsRecord compute_record(const SurfaceState& state, const VorticityTrace& trace,
                                 const ModelParams& params, const BootstrapConfig& cfg) {
  DiagnosticsRecord r;
  r.t = state.t;
  r.energy = hamiltonian(state, params);
  r.mean_h = state.h.mean();
  r.max_abs_h = state.h.max_abs();
  const ComplexField u = to_u(state).u;
  r.w4inf = w4inf_norm(u);
  r.hs = hs_norm(u, cfg.n_sobolev);
  r.weighted_profile = weighted_profile_norm(u, state.t, cfg.iota);
  r.curl_residual_max =
      trace.is_zero() ? 0.0 : curl_residual(state.h, trace, RealField(state.grid())).max_abs();
  return r;
}

std::optional<BootstrapViolation> bootstrap_check(const DiagnosticsRecord& r,
                                                  const BootstrapConfig& cfg) {
  const double b1 = cfg.eps0 / (1.0 + r.t);
  if (r.w4inf > b1) return BootstrapViolation{r.t, "bootstrap1", "w4inf", r.w4inf, b1};
  const double b2 = cfg.eps0 * std::pow(1.0 + r.t, cfg.delta);
  if (r.hs > b2) return BootstrapViolation{r.t, "bootstrap2", "hsN", r.hs, b2};
  if (r.weighted_profile > b2)
    return BootstrapViolation{r.t, "bootstrap2", "weighted_profile", r.weighted_profile, b2};
  return std::nullopt;
}

std::optional<BootstrapViolation> bootstrap_monitor(std::span<const DiagnosticsRecord> series,
                                                    const BootstrapConfig& cfg) {
  if (series.empty()) throw InvalidInput("bootstrap monitor: empty series");
  for (std::size_t n = 1; n < series.size(); ++n)
    if (series[n].t < series[n - 1].t)
      throw InvalidInput("bootstrap monitor: series is not sorted by time");
  for (const DiagnosticsRecord& r : series)
    if (auto v = bootstrap_check(r, cfg)) return v;
  return std::nullopt;
}

namespace {

// Least-squares residual of z ~ A e^{-iwt} + B e^{iwt} at fixed w.
double fit_residual(std::span<const double> t, std::span<const Complex> z, double w) {
  // Normal equations for the two complex amplitudes.
  Complex s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  for (std::size_t n = 0; n < t.size(); ++n) {
    const Complex e1 = std::polar(1.0, -w * t[n]), e2 = std::conj(e1);
    s11 += std::norm(e1);
    s12 += std::conj(e1) * e2;
    s22 += std::norm(e2);
    r1 += std::conj(e1) * z[n];
    r2 += std::conj(e2) * z[n];
  }
  const Complex det = s11 * s22 - s12 * std::conj(s12);
  Complex a, b;
  if (std::abs(det) < 1e-12 * std::abs(s11 * s22)) {
    a = r1 / s11;
    b = 0.0;
  } else {
    a = (r1 * s22 - s12 * r2) / det;
    b = (s11 * r2 - std::conj(s12) * r1) / det;
  }
  double res = 0.0;
  for (std::size_t n = 0; n < t.size(); ++n) {
    const Complex e1 = std::polar(1.0, -w * t[n]);
    res += std::norm(z[n] - a * e1 - b * std::conj(e1));
  }
  return res;
}

}  // namespace

DispersionFit dispersion_fit(std::span<const double> t, std::span<const Complex> z) {
  if (t.size() != z.size()) throw InvalidInput("dispersion: time and sample counts differ");
  for (std::size_t n = 1; n < t.size(); ++n)
    if (!(t[n] > t[n - 1])) throw InvalidInput("dispersion: times must increase strictly");

  std::vector<double> crossings;
  for (std::size_t n = 1; n < t.size(); ++n) {
    const double a = z[n - 1].real(), b = z[n].real();
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      if (b == 0.0 && n + 1 < t.size()) continue;  // counted at the next sample
      crossings.push_back(t[n - 1] + (t[n] - t[n - 1]) * a / (a - b));
    }
  }
  if (crossings.size() < 2)
    throw InvalidInput("dispersion: insufficient data, " + std::to_string(crossings.size()) +
                       " zero crossing(s) in the probe");

  DispersionFit fit;
  fit.zero_crossings = static_cast<int>(crossings.size());
  fit.initial_estimate = std::numbers::pi * static_cast<double>(crossings.size() - 1) /
                         (crossings.back() - crossings.front());

  // Coarse scan around the estimate, then golden-section refinement.
  const double w0 = fit.initial_estimate;
  double lo = 0.7 * w0, hi = 1.3 * w0;
  const int scan = 240;
  double best_w = w0, best_r = fit_residual(t, z, w0);
  for (int n = 0; n <= scan; ++n) {
    const double w = lo + (hi - lo) * n / scan;
    const double r = fit_residual(t, z, w);
    if (r < best_r) best_r = r, best_w = w;
  }
  const double step = (hi - lo) / scan;
  double a = std::max(best_w - step, 1e-12 * w0), b = best_w + step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = fit_residual(t, z, c), fd = fit_residual(t, z, d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * w0; ++it) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a);
      fc = fit_residual(t, z, c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a);
      fd = fit_residual(t, z, d);
    }
  }
  fit.frequency = 0.5 * (a + b);
  fit.rms_residual = std::sqrt(fit_residual(t, z, fit.frequency) / static_cast<double>(t.size()));
  return fit;
}

double dispersion_measure(std::span<const double> t, std::span<const Complex> z) {
  return dispersion_fit(t, z).frequency;
}

}  // namespace rotwave
