#include "rotwave/dynamics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <vector>
#include <string>

#include "rotwave/error.hpp"
#include "rotwave/spectral.hpp"

namespace rotwave {

SurfaceState::SurfaceState(RealField h_, RealField phi_omega_, double t_)
    : h(std::move(h_)), phi_omega(std::move(phi_omega_)), t(t_) {
  require_same_grid(h.grid(), phi_omega.grid(), "SurfaceState");
}

UState to_u(const SurfaceState& s) {
  return UState{ComplexField(s.h, lambda_pow(s.phi_omega, 0.5)), s.t};
}

SurfaceState to_surface(const UState& s) {
  return SurfaceState(s.u.real(), lambda_pow(s.u.imag(), -0.5), s.t);
}

std::string to_string(RhsForm f) { return f == RhsForm::u_form ? "u" : "hphi"; }

RhsForm rhs_form_from_string(const std::string& name) {
  if (name == "u") return RhsForm::u_form;
  if (name == "hphi") return RhsForm::hphi_form;
  throw ConfigError("rhs form must be 'u' or 'hphi', got '" + name + "'");
}

void ModelParams::validate(const Grid2D& grid) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be >= 0");
  const double limit = dt * std::sqrt(grid.kmax());
  if (limit > 0.5)
    throw ConfigError("dt * kmax^(1/2) = " + fmt(limit) +
                      " exceeds 0.5; reduce dt or the grid size");
}

namespace {

RealField mul(const RealField& a, const RealField& b, bool dealias) {
  return dealias ? dealiased_product(a, b) : pointwise(a, b);
}

RealField dot(const VectorField& a, const VectorField& b, bool dealias) {
  return mul(a.x, b.x, dealias) + mul(a.y, b.y, dealias);
}

}  // namespace

RealField r_omega(const RealField& h, const RealField& phi, const RealField& gphi,
                  const VorticityTrace& trace, bool dealias) {
  const VectorField& v = trace.v_omega;
  const VectorField gh = grad(h);
  const RealField vh = dot(v, gh, dealias);
  RealField r = -0.5 * dot(v, v, dealias);
  r -= dot(grad(phi), v, dealias);
  r -= 0.5 * mul(vh, vh, dealias);
  r += mul(gphi, vh, dealias);
  return r;
}

HphiRate rhs_hphi(const SurfaceState& state, const VorticityTrace& trace,
                  const ModelParams& params) {
  require_same_grid(state.grid(), trace.v_omega.grid(), "rhs_hphi");
  const bool da = params.dealias;
  const bool rotational = !trace.is_zero();
  const RealField& h = state.h;
  const RealField phi =
      rotational ? state.phi_omega - recover_a_omega(h, trace) : state.phi_omega;

  RealField gphi = dtn_apply(h, phi, params.dtn_order, da);
  const VectorField gh = grad(h), gp = grad(phi);
  const RealField num = gphi + dot(gh, gp, da);
  const RealField slope2 = dot(gh, gh, da);
  RealField frac = mul(num, num, da);
  for (std::size_t k = 0; k < frac.size(); ++k) frac[k] /= 2.0 * (1.0 + slope2[k]);
  if (da) frac = dealias(frac);

  RealField dphi = -h - 0.5 * dot(gp, gp, da) + frac;
  if (rotational) dphi += r_omega(h, phi, gphi, trace, da);
  return HphiRate{std::move(gphi), std::move(dphi)};
}

namespace {

// N(u) without the linear part. With p = phi_omega, q = Lambda phi_omega:
//   B: re -div(h grad p) - Lambda(h q)
//      im -|grad p|^2/2 + q^2/2
//   T: re -Lambda(h^2 Lambda^2 p)/2 - Lambda^2(h^2 q)/2 + Lambda(h Lambda(h q))
//      im q (h Lambda^2 p - Lambda(h q))
//   L: re -R.V
//   N1: re div(h V) + Lambda(h R.V),  im -q R.V
//   N2: im (R.V)^2 / 2
// Imaginary parts are listed before the outer Lambda^{1/2}. These are the
// quadratic and cubic parts of the (h, phi_omega) system with G cut at
// degree 2. Literal typeset coefficients that differ: T im written with
// Lambda^{3/2} u_I in place of Lambda^2 p (same thing), N1 written with the
// opposite overall sign and N2 without the 1/2.
//
// Everything works on the spectrum of u; products are formed from banded
// physical factors and banded again afterwards.
class Nonlinear {
 public:
  explicit Nonlinear(bool dealias) : da_(dealias) {}

  // Spectra of Re u and Im u from the spectrum of u.
  static void split(const SpectralField& U, SpectralField& re, SpectralField& im) {
    const Grid2D& g = U.grid();
    for (int i = 0; i < g.nx(); ++i) {
      const int mi = (g.nx() - i) % g.nx();
      for (int j = 0; j < g.ny(); ++j) {
        const int mj = (g.ny() - j) % g.ny();
        const Complex a = U(i, j), b = std::conj(U(mi, mj));
        re(i, j) = 0.5 * (a + b);
        im(i, j) = Complex(0.0, -0.5) * (a - b);
      }
    }
  }

  SpectralField operator()(const SpectralField& U, const VorticityTrace* trace) const {
    const Grid2D& g = U.grid();
    SpectralField H(g), UI(g);
    split(U, H, UI);

    const RealField h = phys(H);
    const SpectralField P = lambda_pow(UI, -0.5);
    const RealField gpx = phys(derivative(P, Axis::x1));
    const RealField gpy = phys(derivative(P, Axis::x2));
    const RealField q = phys(lambda_pow(UI, 0.5));
    const RealField l2p = phys(lambda_pow(UI, 1.5));

    const SpectralField HQ = prod(h, q);
    const SpectralField LHQ = lambda_pow(HQ, 1.0);
    const RealField h2 = phys(prod(h, h));

    SpectralField re = derivative(prod(h, gpx), Axis::x1);
    re += derivative(prod(h, gpy), Axis::x2);
    re += LHQ;
    re *= -1.0;
    re -= lambda_pow(prod(h2, l2p), 1.0) * 0.5;
    re -= lambda_pow(prod(h2, q), 2.0) * 0.5;
    re += lambda_pow(prod(h, phys(LHQ)), 1.0);

    SpectralField im = prod(q, q) * 0.5;
    im -= (prod(gpx, gpx) + prod(gpy, gpy)) * 0.5;
    im += prod(q, phys(prod(h, l2p) - LHQ));

    if (trace != nullptr) {
      const VectorField& v = trace->v_omega;
      const SpectralField VX = forward(v.x), VY = forward(v.y);
      const SpectralField RV = riesz(VX, Axis::x1) + riesz(VY, Axis::x2);
      const RealField rv = phys(RV);
      re -= RV;
      re += derivative(prod(h, phys(VX)), Axis::x1);
      re += derivative(prod(h, phys(VY)), Axis::x2);
      re += lambda_pow(prod(h, rv), 1.0);
      im -= prod(q, rv);
      im += prod(rv, rv) * 0.5;
    }
    re += lambda_pow(std::move(im), 0.5) * Complex(0.0, 1.0);
    return re;
  }

 private:
  SpectralField band(SpectralField F) const { return da_ ? dealias(std::move(F)) : F; }
  RealField phys(const SpectralField& F) const { return inverse(band(F)); }
  SpectralField prod(const RealField& a, const RealField& b) const {
    return band(forward(pointwise(a, b)));
  }

  bool da_;
};

// -i Lambda^{1/2} U
SpectralField linear_part(SpectralField U) {
  const std::vector<double>& w = wavenumber_power(U.grid(), 0.5);
  std::span<Complex> c = U.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = Complex(c[k].imag() * w[k], -c[k].real() * w[k]);
  return U;
}

// e^{-i tau Lambda^{1/2}}, phase tables cached per (grid, tau).
SpectralField propagate(SpectralField U, double tau) {
  using Key = std::tuple<int, int, double, double, double>;
  thread_local std::map<Key, std::vector<Complex>> cache;
  const Grid2D& g = U.grid();
  const Key key{g.nx(), g.ny(), g.lx(), g.ly(), tau};
  auto it = cache.find(key);
  if (it == cache.end()) {
    if (cache.size() > 16) cache.clear();
    const std::vector<double>& w = wavenumber_power(g, 0.5);
    std::vector<Complex> phase(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) phase[k] = std::polar(1.0, -tau * w[k]);
    it = cache.emplace(key, std::move(phase)).first;
  }
  const std::vector<Complex>& phase = it->second;
  std::span<Complex> c = U.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Complex a = c[k], b = phase[k];
    c[k] = Complex(a.real() * b.real() - a.imag() * b.imag(),
                   a.real() * b.imag() + a.imag() * b.real());
  }
  return U;
}

void require_admissible(const RealField& h, const VorticityTrace& trace) {
  if (trace.is_zero()) return;
  const double r = curl_residual(h, trace, RealField(h.grid())).max_abs();
  if (!(r <= kAdmissibilityTolerance))
    throw ConstraintViolation("vorticity trace is not admissible: surface curl residual " +
                                  fmt(r),
                              r);
}

}  // namespace

ComplexField rhs_u(const UState& state, const VorticityTrace& trace, const ModelParams& params) {
  require_same_grid(state.u.grid(), trace.v_omega.grid(), "rhs_u");
  require_admissible(state.u.real(), trace);
  const SpectralField U = forward(state.u);
  const Nonlinear n(params.dealias);
  return inverse_complex(linear_part(U) + n(U, trace.is_zero() ? nullptr : &trace));
}

ComplexField rhs_u_irrotational(const UState& state, const ModelParams& params) {
  const SpectralField U = forward(state.u);
  const Nonlinear n(params.dealias);
  return inverse_complex(linear_part(U) + n(U, nullptr));
}

ComplexField linear_propagate(const ComplexField& u, double tau) {
  return inverse_complex(propagate(forward(u), tau));
}

namespace {

void check_finite(const SurfaceState& s) {
  if (s.h.all_finite() && s.phi_omega.all_finite()) return;
  double norm = 0.0;
  for (std::size_t k = 0; k < s.h.size(); ++k) {
    if (!std::isfinite(s.h[k]) || !std::isfinite(s.phi_omega[k])) {
      norm = std::numeric_limits<double>::infinity();
      break;
    }
  }
  throw BlowUp("non-finite state at t = " + fmt(s.t), s.t, norm);
}

SurfaceState step_u(const SurfaceState& s, const VorticityProvider& provider,
                    const ModelParams& params) {
  const double dt = params.dt, t = s.t;
  const Grid2D& g = s.grid();
  const Nonlinear nonlinear(params.dealias);
  const bool irrotational = provider.kind() == ProviderKind::zero;
  auto n_at = [&](const SpectralField& U, double time) {
    if (irrotational) return nonlinear(U, nullptr);
    SpectralField H(g), UI(g);
    Nonlinear::split(U, H, UI);
    const RealField h = inverse(H);
    const VorticityTrace tr = provider.trace(time, h);
    require_admissible(h, tr);
    return nonlinear(U, tr.is_zero() ? nullptr : &tr);
  };
  // Integrating-factor RK4 on f = e^{it Lambda^{1/2}} u, written back in u.
  const SpectralField u0 = forward(to_u(s).u);
  const SpectralField half_u0 = propagate(u0, 0.5 * dt);

  const SpectralField k1 = n_at(u0, t);
  const SpectralField k2 = n_at(propagate(u0 + k1 * (0.5 * dt), 0.5 * dt), t + 0.5 * dt);
  const SpectralField k3 = n_at(half_u0 + k2 * (0.5 * dt), t + 0.5 * dt);
  const SpectralField k4 = n_at(propagate(half_u0 + k3 * dt, 0.5 * dt), t + dt);

  SpectralField acc = propagate(u0 + k1 * (dt / 6.0), dt);
  acc += propagate(k2 + k3, 0.5 * dt) * (dt / 3.0);
  acc += k4 * (dt / 6.0);
  return to_surface(UState{inverse_complex(acc), t + dt});
}

SurfaceState step_hphi(const SurfaceState& s, const VorticityProvider& provider,
                       const ModelParams& params) {
  const double dt = params.dt, t = s.t;
  auto rate = [&](const SurfaceState& x, double time) {
    return rhs_hphi(x, provider.trace(time, x.h), params);
  };
  auto shift = [&](const HphiRate& r, double c) {
    return SurfaceState(s.h + r.dh * c, s.phi_omega + r.dphi_omega * c, t);
  };
  const HphiRate k1 = rate(s, t);
  const HphiRate k2 = rate(shift(k1, 0.5 * dt), t + 0.5 * dt);
  const HphiRate k3 = rate(shift(k2, 0.5 * dt), t + 0.5 * dt);
  const HphiRate k4 = rate(shift(k3, dt), t + dt);
  RealField h = s.h + (k1.dh + 2.0 * k2.dh + 2.0 * k3.dh + k4.dh) * (dt / 6.0);
  RealField p = s.phi_omega +
                (k1.dphi_omega + 2.0 * k2.dphi_omega + 2.0 * k3.dphi_omega + k4.dphi_omega) *
                    (dt / 6.0);
  return SurfaceState(std::move(h), std::move(p), t + dt);
}

}  // namespace

SurfaceState step(const SurfaceState& state, const VorticityProvider& provider,
                  const ModelParams& params) {
  require_same_grid(state.grid(), provider.grid(), "step");
  SurfaceState next = params.rhs_form == RhsForm::u_form ? step_u(state, provider, params)
                                                         : step_hphi(state, provider, params);
  check_finite(next);
  const double drift = std::abs(next.h.mean() - state.h.mean());
  if (drift > 1e-12)
    throw NumericError("mean elevation drifted by " + fmt(drift) + " in one step",
                       drift);
  return next;
}

double hamiltonian(const SurfaceState& state, const ModelParams& params) {
  const RealField g = dtn_apply(state.h, state.phi_omega, params.dtn_order, params.dealias);
  return 0.5 * inner(state.phi_omega, g) + 0.5 * inner(state.h, state.h);
}

}  // namespace rotwave
