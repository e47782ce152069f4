#pragma once

#include <cstdio>
#include <filesystem>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rotwave/config.hpp"
#include "rotwave/diagnostics.hpp"
#include "rotwave/dtn.hpp"
#include "rotwave/dynamics.hpp"
#include "rotwave/vorticity.hpp"

namespace rotwave {

struct GridSpec {
  int nx = 64;
  int ny = 64;
  double lx = 2.0 * std::numbers::pi;
  double ly = 2.0 * std::numbers::pi;
  Grid2D make() const { return Grid2D(nx, ny, lx, ly); }
};

// Named initial conditions, theta = k.x:
//   zero, cosine (h = A cos theta), traveling (plus phi = A |k|^{-1/2} sin theta),
//   stokes (h = A cos theta + A^2 |k| cos 2 theta / 2, phi = A |k|^{-1/2} sin theta),
//   gaussian (periodic bump A exp((cos s1 + cos s2 - 2) / w^2), s = 2 pi (x - c) / L),
//   snapshot (WWS1 file).
struct InitialSpec {
  std::string family = "zero";
  double amplitude = 0.0;
  LatticeMode mode{1, 0};
  double width = 1.0;
  std::string path;
};

struct VorticitySpec {
  ProviderKind kind = ProviderKind::zero;
  AnalyticSpec analytic;
};

struct OutputSpec {
  std::string dir = "out";
  int snapshot_stride = 0;  // 0: no snapshots
  int csv_stride = 1;
};

struct SimConfig {
  GridSpec grid;
  ModelParams model;
  InitialSpec initial;
  VorticitySpec vorticity;
  BootstrapConfig bootstrap;
  bool monitor = false;  // stop at the first bootstrap violation
  OutputSpec output;

  static const std::vector<std::string>& keys();
  static SimConfig from(const KeyValueConfig& kv);
  // Range checks that do not need the filesystem or the grid to be built.
  void validate() const;
};

struct SweepConfig {
  SimConfig cell;  // template; amplitudes are overwritten per cell
  std::vector<double> eps0;
  std::vector<double> eps1;
  double fraction = 0.5;  // initial amplitude = fraction * eps0
  double max_wall_seconds = 120.0;

  static const std::vector<std::string>& keys();
  static SweepConfig from(const KeyValueConfig& kv);
};

// Loads a config file (sim + sweep keys allowed), applies --set overrides and
// the output directory precedence --out > ROTWAVE_OUTPUT_DIR > output.dir.
KeyValueConfig load_config(const std::string& path, const std::vector<std::string>& overrides);
std::string resolve_output_dir(const std::string& from_config, const std::string& cli_out);

// Snapshot format WWS1: "WWS1", u32 nx, u32 ny, f64 lx, f64 ly, f64 t, then
// h and phi_omega as row-major f64 arrays, all little-endian.
void write_snapshot(const std::filesystem::path& path, const SurfaceState& state);
SurfaceState read_snapshot(const std::filesystem::path& path);

SurfaceState make_initial_state(const SimConfig& cfg, const Grid2D& grid);
VorticityProvider make_provider(const SimConfig& cfg, const Grid2D& grid);

enum class RunStatus { completed, bootstrap_violation, blow_up, timeout };
std::string to_string(RunStatus s);

struct SimResult {
  RunStatus status = RunStatus::completed;
  double t_final = 0.0;
  int steps = 0;
  std::optional<BootstrapViolation> violation;
  std::string message;
  std::vector<DiagnosticsRecord> records;
  int exit_code() const;
};

struct SimOptions {
  double max_wall_seconds = std::numeric_limits<double>::infinity();
  std::ostream* log = nullptr;
};

// Writes <dir>/diagnostics.csv and <dir>/snap_<step>.wws.
SimResult run_simulate(const SimConfig& cfg, const std::filesystem::path& dir,
                       const SimOptions& opts = {});

struct DtnValidation {
  struct Row {
    int order;
    ConvergenceStudy study;
    bool pass;
  };
  std::vector<Row> rows;
  std::optional<double> strip_ratio;
  std::vector<double> strip_errors;
  bool pass = true;
};
DtnValidation run_validate_dtn(const Grid2D& grid, const std::vector<int>& orders,
                               const std::vector<double>& eps, LatticeMode k, bool strip,
                               std::ostream& out);

struct CurlCheck {
  std::vector<double> times;
  std::vector<double> residuals;
  double max_residual = 0.0;
  bool pass = false;
};
// Residual of the provider trace against the omega . n its family implies
// (or against 0 with against_zero), on the surface h.
CurlCheck run_curl_check(const VorticityProvider& provider, const RealField& h,
                         const std::vector<double>& times, bool against_zero,
                         std::ostream& out);

struct DispersionRun {
  double measured = 0.0;
  double expected = 0.0;
  double relative_error = 0.0;
  bool pass = false;
};
// Linear-amplitude run of a single cosine mode; probes the mode's Fourier
// coefficient of u every step.
DispersionRun run_dispersion(const SimConfig& cfg, double periods, std::ostream& out);

struct ScanRow {
  double eps0 = 0.0, eps1 = 0.0;
  std::optional<double> t_violation;
  std::string clause = "none";
  std::string status;
};
struct ScanResult {
  std::vector<ScanRow> rows;
  bool trend_ok = true;
};
// Cells run in order; writes <dir>/scan.csv and one subdirectory per cell.
ScanResult run_scan(const SweepConfig& cfg, const std::filesystem::path& dir, std::ostream& out);
// For each eps0, t_violation non-increasing in eps1 ("none" counts as +inf).
bool scan_trend_ok(const std::vector<ScanRow>& rows);

}  // namespace rotwave
