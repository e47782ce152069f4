#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rotwave/dynamics.hpp"
#include "rotwave/field.hpp"
#include "rotwave/vorticity.hpp"

namespace rotwave {

struct BootstrapConfig {
  double eps0 = 0.1;
  double eps1 = 0.01;
  double delta = 0.01;
  double iota = 0.01;
  int n_sobolev = 8;

  void validate() const;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double mean_h = 0.0;
  double max_abs_h = 0.0;
  double w4inf = 0.0;
  double hs = 0.0;
  double weighted_profile = 0.0;
  double curl_residual_max = 0.0;
};

// max over |alpha| <= 4 of max_x |d^alpha u|.
double w4inf_norm(const ComplexField& u);
// (area * sum_k (1 + |k|^2)^n |c_k|^2)^{1/2}, c_k the normalized coefficients.
double hs_norm(const ComplexField& u, int n);
// || Lambda^iota (x - c) e^{it Lambda^{1/2}} u ||_{L^2}, c the box centre.
// The weight is not periodic, so this only means something while the
// profile stays away from the box edges.
double weighted_profile_norm(const ComplexField& u, double t, double iota);

DiagnosticsRecord compute_record(const SurfaceState& state, const VorticityTrace& trace,
                                 const ModelParams& params, const BootstrapConfig& cfg);

struct BootstrapViolation {
  double t = 0.0;
  std::string clause;    // "bootstrap1" or "bootstrap2"
  std::string quantity;  // "w4inf", "hsN" or "weighted_profile"
  double value = 0.0;
  double bound = 0.0;
};

// Earliest record breaking
//   w4inf <= eps0 / (1 + t)                        (bootstrap1)
//   hs <= eps0 (1 + t)^delta, weighted <= eps0 (1 + t)^delta   (bootstrap2)
std::optional<BootstrapViolation> bootstrap_monitor(std::span<const DiagnosticsRecord> series,
                                                    const BootstrapConfig& cfg);
std::optional<BootstrapViolation> bootstrap_check(const DiagnosticsRecord& r,
                                                  const BootstrapConfig& cfg);

struct DispersionFit {
  double frequency = 0.0;
  double initial_estimate = 0.0;  // from zero crossings of the real part
  int zero_crossings = 0;
  double rms_residual = 0.0;
};

// Angular frequency of a probe z(t) ~ A e^{-i w t} + B e^{i w t}: zero
// crossings give a first guess, a least-squares fit over w refines it.
DispersionFit dispersion_fit(std::span<const double> t, std::span<const Complex> z);
double dispersion_measure(std::span<const double> t, std::span<const Complex> z);

}  // namespace rotwave
