#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "rotwave/error.hpp"
#include "rotwave/harness.hpp"
#include "rotwave/spectral.hpp"

namespace rotwave {

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::bootstrap_violation: return "bootstrap-violation";
    case RunStatus::blow_up: return "blow-up";
    case RunStatus::timeout: return "timeout";
  }
  return "?";
}

int SimResult::exit_code() const {
  switch (status) {
    case RunStatus::completed: return 0;
    case RunStatus::bootstrap_violation:
    case RunStatus::blow_up: return static_cast<int>(ExitCode::numeric_blowup);
    case RunStatus::timeout: return static_cast<int>(ExitCode::failure);
  }
  return 1;
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const SimConfig& cfg) : out_(path) {
    if (!out_) throw IoError("cannot write '" + path.string() + "'");
    const GridSpec& g = cfg.grid;
    out_ << "# rotwave diagnostics\n"
         << "# grid " << g.nx << "x" << g.ny << " box " << g17(g.lx) << " x " << g17(g.ly)
         << "\n"
         << "# dt " << g17(cfg.model.dt) << " t_end " << g17(cfg.model.t_end) << " dtn_order "
         << cfg.model.dtn_order.value() << " rhs_form " << to_string(cfg.model.rhs_form)
         << " dealias " << (cfg.model.dealias ? "true" : "false") << "\n"
         << "# hsN uses N = " << cfg.bootstrap.n_sobolev
         << "; weighted_profile uses iota = " << g17(cfg.bootstrap.iota) << "\n"
         << "# weighted_profile weights by x - (box centre); the box is periodic, so the value "
            "is only meaningful while the solution stays localized away from the edges\n"
         << "t,energy,mean_h,max_abs_h,w4inf,hsN,weighted_profile,curl_residual_max\n";
  }

  void row(const DiagnosticsRecord& r) {
    out_ << g17(r.t) << ',' << g17(r.energy) << ',' << g17(r.mean_h) << ',' << g17(r.max_abs_h)
         << ',' << g17(r.w4inf) << ',' << g17(r.hs) << ',' << g17(r.weighted_profile) << ','
         << g17(r.curl_residual_max) << '\n';
  }

  void comment(const std::string& text) { out_ << "# " << text << '\n'; }

  void close() {
    out_.flush();
    if (!out_) throw IoError("failed writing diagnostics csv");
  }

 private:
  std::ofstream out_;
};

std::string snapshot_name(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06ld.wws", step);
  return buf;
}

}  // namespace

SimResult run_simulate(const SimConfig& cfg, const std::filesystem::path& dir,
                       const SimOptions& opts) {
  cfg.validate();
  const Grid2D grid = cfg.grid.make();
  SurfaceState state = make_initial_state(cfg, grid);
  const VorticityProvider provider = make_provider(cfg, grid);
  {
    // Admissibility on the actual initial surface.
    const double t0[] = {state.t};
    provider.check_admissible(state.h, t0);
  }

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  CsvWriter csv(dir / "diagnostics.csv", cfg);

  const double dt = cfg.model.dt;
  const long first = std::lround(state.t / dt);
  const long last = std::lround(cfg.model.t_end / dt);
  SimResult result;
  const auto start = std::chrono::steady_clock::now();
  bool slope_warned = false;

  auto record = [&](long step_index) -> bool {
    const VorticityTrace tr = provider.trace(state.t, state.h);
    if (!slope_warned) {
      const VectorField gh = grad(state.h);
      const double slope = gh.max_abs();
      if (slope > 0.5) {
        csv.comment("warning t=" + g17(state.t) + " max|grad h|=" + g17(slope) +
                    " exceeds 0.5; the truncated DtN series is unreliable");
        slope_warned = true;
      }
    }
    if (cfg.output.snapshot_stride > 0 && step_index % cfg.output.snapshot_stride == 0)
      write_snapshot(dir / snapshot_name(step_index), state);
    if (step_index % cfg.output.csv_stride != 0 && step_index != last) return false;
    const DiagnosticsRecord r = compute_record(state, tr, cfg.model, cfg.bootstrap);
    csv.row(r);
    result.records.push_back(r);
    if (cfg.monitor) {
      if (auto v = bootstrap_check(r, cfg.bootstrap)) {
        result.status = RunStatus::bootstrap_violation;
        result.violation = v;
        return true;
      }
    }
    return false;
  };

  bool stop = record(first);
  for (long n = first; n < last && !stop; ++n) {
    try {
      state = step(state, provider, cfg.model);
    } catch (const BlowUp& e) {
      result.status = RunStatus::blow_up;
      result.message = e.what();
      break;
    } catch (const NumericError& e) {
      result.status = RunStatus::blow_up;
      result.message = e.what();
      break;
    }
    ++result.steps;
    stop = record(n + 1);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!stop && wall > opts.max_wall_seconds && n + 1 < last) {
      result.status = RunStatus::timeout;
      result.message = "wall-time limit " + g17(opts.max_wall_seconds) + " s reached";
      break;
    }
  }
  result.t_final = state.t;

  std::string summary = "end status=" + to_string(result.status) + " t=" + g17(state.t) +
                        " steps=" + std::to_string(result.steps);
  if (result.violation)
    summary += " clause=" + result.violation->clause + " quantity=" + result.violation->quantity +
               " value=" + g17(result.violation->value) + " bound=" + g17(result.violation->bound);
  if (!result.message.empty()) summary += " cause=\"" + result.message + "\"";
  csv.comment(summary);
  csv.close();
  if (opts.log) *opts.log << summary << '\n';
  return result;
}

}  // namespace rotwave
