#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "rotwave/error.hpp"
#include "rotwave/harness.hpp"
#include "rotwave/spectral.hpp"

namespace rotwave {

namespace {

std::string num(double v, const char* f = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

DtnValidation run_validate_dtn(const Grid2D& grid, const std::vector<int>& orders,
                               const std::vector<double>& eps, LatticeMode k, bool strip,
                               std::ostream& out) {
  DtnValidation v;
  out << "dtn convergence, h = eps cos(x1), mode (" << k.m1 << "," << k.m2 << "), grid "
      << grid.nx() << "x" << grid.ny() << "\n";
  for (int order : orders) {
    DtnValidation::Row row{order, dtn_convergence_study(grid, eps, DtnOrder(order), k), false};
    row.pass = row.study.slope >= order + 0.9;
    v.pass = v.pass && row.pass;
    out << "  order " << order << ": errors";
    for (double e : row.study.errors) out << ' ' << num(e, "%.3e");
    out << "  slope " << num(row.study.slope, "%.3f") << " (need >= " << num(order + 0.9, "%.1f")
        << ") " << (row.pass ? "PASS" : "FAIL") << "\n";
    v.rows.push_back(std::move(row));
  }
  if (strip) {
    // Finite-depth family at depth 1 against the strip solve, two resolutions.
    const double depth = 1.0;
    const double amp = eps.empty() ? 0.05 : eps.back();
    const RealField h = RealField::from_function(grid, [&](double x, double) {
      return amp * std::cos(x);
    });
    const DtnSample exact = dtn_oracle_exact(h, k, depth);
    for (int levels : {32, 64}) {
      const RealField g = dtn_oracle_strip(h, exact.phi, depth, levels);
      v.strip_errors.push_back((g - exact.gphi).max_abs());
    }
    v.strip_ratio = v.strip_errors[0] / v.strip_errors[1];
    const bool ok = *v.strip_ratio >= 3.5;
    v.pass = v.pass && ok;
    out << "strip oracle, depth 1, eps " << num(amp) << ": error(32) "
        << num(v.strip_errors[0], "%.3e") << " error(64) " << num(v.strip_errors[1], "%.3e")
        << " ratio " << num(*v.strip_ratio, "%.3f") << " (need >= 3.5) "
        << (ok ? "PASS" : "FAIL") << "\n";
  }
  return v;
}

CurlCheck run_curl_check(const VorticityProvider& provider, const RealField& h,
                         const std::vector<double>& times, bool against_zero,
                         std::ostream& out) {
  CurlCheck c;
  c.times = times;
  for (double t : times) {
    const ProviderSample s = provider.sample(t, h);
    const RealField omega = against_zero ? RealField(h.grid()) : s.omega_n;
    const double r = curl_residual(h, s.trace, omega).max_abs();
    c.residuals.push_back(r);
    c.max_residual = std::max(c.max_residual, r);
    out << "  t " << num(t) << "  max|curl residual| " << num(r, "%.3e") << "\n";
  }
  c.pass = c.max_residual < 1e-10;
  out << "curl check: max residual " << num(c.max_residual, "%.3e") << " (need < 1e-10) "
      << (c.pass ? "PASS" : "FAIL") << "\n";
  return c;
}

DispersionRun run_dispersion(const SimConfig& cfg, double periods, std::ostream& out) {
  cfg.validate();
  if (!(periods > 0.0)) throw ConfigError("dispersion: periods must be positive");
  const Grid2D grid = cfg.grid.make();
  const LatticeMode k = cfg.initial.mode;
  if (k.is_zero()) throw ConfigError("dispersion: initial mode must be nonzero");
  SurfaceState state = make_initial_state(cfg, grid);
  const VorticityProvider provider = make_provider(cfg, grid);

  DispersionRun run;
  run.expected = std::sqrt(k.kabs(grid));
  const double span = periods * 2.0 * std::numbers::pi / run.expected;
  const long steps = std::lround(std::ceil(span / cfg.model.dt - 1e-9));
  const int i = ((k.m1 % grid.nx()) + grid.nx()) % grid.nx();
  const int j = ((k.m2 % grid.ny()) + grid.ny()) % grid.ny();

  std::vector<double> ts;
  std::vector<Complex> zs;
  auto probe = [&] {
    ts.push_back(state.t);
    zs.push_back(forward(to_u(state).u)(i, j));
  };
  probe();
  for (long n = 0; n < steps; ++n) {
    state = step(state, provider, cfg.model);
    probe();
  }
  const DispersionFit fit = dispersion_fit(ts, zs);
  run.measured = fit.frequency;
  run.relative_error = std::abs(run.measured - run.expected) / run.expected;
  run.pass = run.relative_error <= 1e-4;
  out << "dispersion: mode (" << k.m1 << "," << k.m2 << ") " << steps << " steps of dt "
      << num(cfg.model.dt) << ", " << fit.zero_crossings << " zero crossings\n"
      << "  measured " << num(run.measured, "%.10f") << "  expected |k|^(1/2) "
      << num(run.expected, "%.10f") << "  relative error " << num(run.relative_error, "%.3e")
      << " (need <= 1e-4) " << (run.pass ? "PASS" : "FAIL") << "\n";
  return run;
}

bool scan_trend_ok(const std::vector<ScanRow>& rows) {
  auto time_of = [](const ScanRow& r) {
    return r.t_violation ? *r.t_violation : std::numeric_limits<double>::infinity();
  };
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < rows.size(); ++b)
      if (rows[a].eps0 == rows[b].eps0 && rows[a].eps1 < rows[b].eps1 &&
          time_of(rows[b]) > time_of(rows[a]))
        return false;
  return true;
}

ScanResult run_scan(const SweepConfig& cfg, const std::filesystem::path& dir, std::ostream& out) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
  std::ofstream table(dir / "scan.csv");
  if (!table) throw IoError("cannot write scan.csv");
  table << "eps0,eps1,t_violation,clause,status\n";

  ScanResult result;
  for (std::size_t a = 0; a < cfg.eps0.size(); ++a) {
    for (std::size_t b = 0; b < cfg.eps1.size(); ++b) {
      SimConfig cell = cfg.cell;
      cell.initial.amplitude = cfg.fraction * cfg.eps0[a];
      cell.vorticity.analytic.amplitude = cfg.eps1[b];
      cell.bootstrap.eps0 = cfg.eps0[a];
      cell.bootstrap.eps1 = cfg.eps1[b];
      cell.monitor = true;
      ScanRow row{cfg.eps0[a], cfg.eps1[b], std::nullopt, "none", ""};
      const std::filesystem::path cell_dir =
          dir / ("cell_" + std::to_string(a) + "_" + std::to_string(b));
      try {
        SimOptions opts;
        opts.max_wall_seconds = cfg.max_wall_seconds;
        const SimResult r = run_simulate(cell, cell_dir, opts);
        row.status = to_string(r.status);
        if (r.violation) {
          row.t_violation = r.violation->t;
          row.clause = r.violation->clause;
        } else if (r.status == RunStatus::blow_up) {
          row.t_violation = r.t_final;
          row.clause = "blow-up";
        }
      } catch (const Error& e) {
        row.status = "error(exit " + std::to_string(static_cast<int>(e.exit_code())) + ")";
        out << "  cell " << a << "," << b << " failed: " << e.what() << "\n";
      }
      table << num(row.eps0, "%.17g") << ',' << num(row.eps1, "%.17g") << ','
            << (row.t_violation ? num(*row.t_violation, "%.17g") : std::string("none")) << ','
            << row.clause << ',' << row.status << '\n';
      out << "  eps0 " << num(row.eps0) << " eps1 " << num(row.eps1) << "  t_violation "
          << (row.t_violation ? num(*row.t_violation) : std::string("none")) << "  "
          << row.clause << "  " << row.status << "\n";
      result.rows.push_back(row);
    }
  }
  table.flush();
  if (!table) throw IoError("failed writing scan.csv");
  result.trend_ok = scan_trend_ok(result.rows);
  out << "trend (t_violation non-increasing in eps1 for each eps0): "
      << (result.trend_ok ? "PASS" : "FAIL") << "\n";
  return result;
}

}  // namespace rotwave
