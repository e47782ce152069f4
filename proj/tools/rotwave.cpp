// rotwave command-line driver.
#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "rotwave/error.hpp"
#include "rotwave/harness.hpp"

using namespace rotwave;

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

struct Common {
  std::string config;
  std::string out;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Common& c, bool with_out) {
  cmd->add_option("--config", c.config, "Config file (key = value lines)");
  if (with_out) cmd->add_option("--out", c.out, "Output directory (overrides config and env)");
  cmd->add_option("--set", c.sets, "Override a config key, key=value (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotwave: spectral solver for 3D gravity water waves with surface vorticity"};
  app.require_subcommand(1);

  Common sim_opts;
  CLI::App* sim = app.add_subcommand("simulate", "Run a simulation and write diagnostics");
  add_common(sim, sim_opts, true);

  std::vector<int> orders{0, 1, 2};
  std::vector<double> eps{0.01, 0.02, 0.04};
  int m1 = 1, m2 = 0, n = 64;
  bool strip = false;
  CLI::App* vd = app.add_subcommand("validate-dtn", "Convergence of the truncated DtN series");
  vd->add_option("--order", orders, "Truncation orders to test")->check(CLI::Range(0, 6));
  vd->add_option("--eps", eps, "Amplitudes of h = eps cos(x1)");
  vd->add_option("--mode1", m1, "Oracle wavevector, first lattice index");
  vd->add_option("--mode2", m2, "Oracle wavevector, second lattice index");
  vd->add_option("--grid", n, "Grid size (n x n)");
  vd->add_flag("--strip", strip, "Also cross-check against the finite-depth strip solver");

  Common curl_opts;
  std::vector<double> times{0.0, 0.5, 1.0};
  bool against_zero = false;
  CLI::App* cc = app.add_subcommand("curl-check", "Surface curl residual of a vorticity provider");
  add_common(cc, curl_opts, false);
  cc->add_option("--times", times, "Sample times");
  cc->add_flag("--against-zero", against_zero,
               "Compare with omega . n = 0 instead of the family's own normal vorticity");

  Common disp_opts;
  double periods = 1.0;
  CLI::App* dp = app.add_subcommand("dispersion", "Measure the linear frequency of one mode");
  add_common(dp, disp_opts, false);
  dp->add_option("--periods", periods, "Number of linear periods to integrate");

  Common scan_opts;
  CLI::App* sc = app.add_subcommand("scan", "Lifespan sweep over (eps0, eps1)");
  add_common(sc, scan_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::config_error);
  }

  try {
    if (*sim) {
      const KeyValueConfig kv = load_config(sim_opts.config, sim_opts.sets);
      const SimConfig cfg = SimConfig::from(kv);
      const std::string dir = resolve_output_dir(cfg.output.dir, sim_opts.out);
      SimOptions opts;
      opts.log = &std::cout;
      const SimResult r = run_simulate(cfg, dir, opts);
      if (!r.message.empty()) std::cerr << "rotwave: " << r.message << "\n";
      return r.exit_code();
    }
    if (*vd) {
      const Grid2D grid(n, n);
      const DtnValidation v =
          run_validate_dtn(grid, orders, eps, LatticeMode{m1, m2}, strip, std::cout);
      return v.pass ? 0 : code(ExitCode::failure);
    }
    if (*cc) {
      const KeyValueConfig kv = load_config(curl_opts.config, curl_opts.sets);
      const SimConfig cfg = SimConfig::from(kv);
      const Grid2D grid = cfg.grid.make();
      const SurfaceState s = make_initial_state(cfg, grid);
      VorticityProvider p = VorticityProvider::zero(grid);
      if (cfg.vorticity.kind == ProviderKind::analytic)
        p = VorticityProvider::analytic(grid, cfg.vorticity.analytic, false);
      else if (cfg.vorticity.kind == ProviderKind::static_trace)
        p = make_provider(cfg, grid);
      const CurlCheck c = run_curl_check(p, s.h, times, against_zero, std::cout);
      return c.pass ? 0 : code(ExitCode::constraint_violation);
    }
    if (*dp) {
      const KeyValueConfig kv = load_config(disp_opts.config, disp_opts.sets);
      const DispersionRun r = run_dispersion(SimConfig::from(kv), periods, std::cout);
      return r.pass ? 0 : code(ExitCode::failure);
    }
    if (*sc) {
      const KeyValueConfig kv = load_config(scan_opts.config, scan_opts.sets);
      const SweepConfig cfg = SweepConfig::from(kv);
      const std::string dir = resolve_output_dir(cfg.cell.output.dir, scan_opts.out);
      const ScanResult r = run_scan(cfg, dir, std::cout);
      return r.trend_ok ? 0 : code(ExitCode::failure);
    }
  } catch (const ConstraintViolation& e) {
    std::cerr << "rotwave: " << e.what() << " (residual " << fmt(e.residual()) << ")\n";
    return code(e.exit_code());
  } catch (const Error& e) {
    std::cerr << "rotwave: " << e.what() << "\n";
    return code(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "rotwave: " << e.what() << "\n";
    return code(ExitCode::failure);
  }
  return code(ExitCode::failure);
}
