#pragma once

#include <string>

#include "rotwave/dtn.hpp"
#include "rotwave/field.hpp"
#include "rotwave/vorticity.hpp"

namespace rotwave {

struct SurfaceState {
  RealField h;
  RealField phi_omega;  // phi + a_omega
  double t = 0.0;

  explicit SurfaceState(const Grid2D& grid) : h(grid), phi_omega(grid) {}
  SurfaceState(RealField h_, RealField phi_omega_, double t_ = 0.0);
  const Grid2D& grid() const noexcept { return h.grid(); }
};

// u = h + i Lambda^{1/2} phi_omega.
struct UState {
  ComplexField u;
  double t = 0.0;
};

UState to_u(const SurfaceState& s);
// The mean of phi_omega is not carried by u; the result has zero mean.
SurfaceState to_surface(const UState& s);

enum class RhsForm { u_form, hphi_form };
std::string to_string(RhsForm f);
RhsForm rhs_form_from_string(const std::string& name);

struct ModelParams {
  DtnOrder dtn_order{2};
  RhsForm rhs_form = RhsForm::u_form;
  double dt = 0.01;
  double t_end = 1.0;
  bool dealias = true;

  // dt > 0, t_end >= 0 and dt * kmax^{1/2} <= 0.5 on `grid`.
  void validate(const Grid2D& grid) const;
};

struct HphiRate {
  RealField dh;
  RealField dphi_omega;
};

// dh = G(h) phi,
// dphi_omega = -h - |grad phi|^2/2
//              + (G(h) phi + grad h . grad phi)^2 / (2 (1 + |grad h|^2)) + R_omega
// with phi = phi_omega - a_omega and R_omega the vorticity remainder.
HphiRate rhs_hphi(const SurfaceState& state, const VorticityTrace& trace,
                  const ModelParams& params);
// R_omega = -|V|^2/2 - grad phi . V - (V . grad h)^2/2 + G(h)phi (V . grad h)
RealField r_omega(const RealField& h, const RealField& phi, const RealField& gphi,
                  const VorticityTrace& trace, bool dealias = true);

// du = -i Lambda^{1/2} u + B(u) + T(u) + L(V) + N1(u, V) + N2(V, V).
ComplexField rhs_u(const UState& state, const VorticityTrace& trace, const ModelParams& params);
// Same with L, N1, N2 left out entirely.
ComplexField rhs_u_irrotational(const UState& state, const ModelParams& params);

// e^{-i tau Lambda^{1/2}} u.
ComplexField linear_propagate(const ComplexField& u, double tau);

// One step of size params.dt. u-form: RK4 on the profile e^{it Lambda^{1/2}} u
// (integrating factor); hphi-form: plain RK4. Throws BlowUp on non-finite
// output.
SurfaceState step(const SurfaceState& state, const VorticityProvider& provider,
                  const ModelParams& params);

// E = 1/2 int phi_omega G(h) phi_omega + 1/2 int h^2 (grid sum x cell area).
// Only conserved when the trace vanishes.
double hamiltonian(const SurfaceState& state, const ModelParams& params);

}  // namespace rotwave
