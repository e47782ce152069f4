#pragma once

#include <span>
#include <string>
#include <variant>

#include "rotwave/dtn.hpp"
#include "rotwave/field.hpp"

namespace rotwave {

// Tangential trace V_omega = v_omega|_surface (horizontal components).
struct VorticityTrace {
  VectorField v_omega;
  double time = 0.0;

  static VorticityTrace zero(const Grid2D& grid, double t = 0.0);
  bool is_zero() const;
};

// B_omega = V_omega . grad h (v_omega is tangent to the surface).
RealField b_omega(const RealField& h, const VorticityTrace& trace);
// U_omega = V_omega + grad h (grad h . V_omega).
VectorField u_omega(const RealField& h, const VorticityTrace& trace);
// d1 U^2 - d2 U^1 - omega_n.
RealField curl_residual(const RealField& h, const VorticityTrace& trace,
                        const RealField& omega_n);

inline constexpr double kAdmissibilityTolerance = 1e-8;

// a_omega with grad a_omega = U_omega, zero mean. Throws ConstraintViolation
// when U_omega is not curl-free to within `tolerance` (max norm).
RealField recover_a_omega(const RealField& h, const VorticityTrace& trace,
                          double tolerance = kAdmissibilityTolerance);

enum class ProviderKind { zero, static_trace, analytic };

// Closed-form families. The gradient families prescribe U_omega = grad a
// and invert U = (I + grad h grad h^T) V for the trace, so they are
// admissible on every surface. The stream family prescribes
// U_omega = (-d2 psi, d1 psi) and therefore carries omega . n = Lap psi.
enum class AnalyticFamily { gradient_cosine, gradient_gaussian, stream_cosine };

struct AnalyticSpec {
  AnalyticFamily family = AnalyticFamily::gradient_cosine;
  double amplitude = 0.0;
  LatticeMode mode{1, 0};  // cosine families
  double frequency = 0.0;  // time dependence cos(k.x - frequency t) or cos(frequency t)
  double width = 1.0;      // bump family, centred in the box (periodic, gaussian-like)
};

std::string to_string(AnalyticFamily f);
AnalyticFamily analytic_family_from_string(const std::string& name);

struct ProviderSample {
  VorticityTrace trace;
  RealField omega_n;  // surface normal vorticity implied by the family
};

class VorticityProvider {
 public:
  static VorticityProvider zero(const Grid2D& grid);
  static VorticityProvider from_trace(VectorField v_omega);
  // With require_admissible, the family is checked on a flat surface at
  // t = 0 and rejected (ConstraintViolation) if omega . n != 0.
  static VorticityProvider analytic(const Grid2D& grid, const AnalyticSpec& spec,
                                    bool require_admissible = true);

  ProviderKind kind() const noexcept;
  const Grid2D& grid() const noexcept { return grid_; }

  ProviderSample sample(double t, const RealField& h) const;
  VorticityTrace trace(double t, const RealField& h) const { return sample(t, h).trace; }

  // Max over `times` of |curl_residual(h, trace, 0)|; throws
  // ConstraintViolation above `tolerance`.
  double check_admissible(const RealField& h, std::span<const double> times,
                          double tolerance = kAdmissibilityTolerance) const;

 private:
  struct Zero {};
  struct Static {
    VectorField v;
  };
  explicit VorticityProvider(const Grid2D& grid, std::variant<Zero, Static, AnalyticSpec> p)
      : grid_(grid), impl_(std::move(p)) {}

  Grid2D grid_;
  std::variant<Zero, Static, AnalyticSpec> impl_;
};

}  // namespace rotwave
