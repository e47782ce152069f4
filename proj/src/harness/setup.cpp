#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numbers>

#include "rotwave/error.hpp"
#include "rotwave/harness.hpp"

namespace rotwave {

namespace {

const std::vector<std::string> kSimKeys = {
    "grid.nx",           "grid.ny",           "grid.lx",           "grid.ly",
    "model.dtn_order",   "model.rhs_form",    "model.dt",          "model.t_end",
    "model.dealias",     "initial.family",    "initial.amplitude", "initial.mode1",
    "initial.mode2",     "initial.width",     "initial.path",      "vorticity.kind",
    "vorticity.family",  "vorticity.amplitude", "vorticity.mode1", "vorticity.mode2",
    "vorticity.omega",   "vorticity.width",   "bootstrap.eps0",    "bootstrap.eps1",
    "bootstrap.delta",   "bootstrap.iota",    "bootstrap.n_sobolev", "bootstrap.monitor",
    "output.dir",        "output.snapshot_stride", "output.csv_stride",
};

const std::vector<std::string> kSweepKeys = [] {
  std::vector<std::string> k = kSimKeys;
  for (const char* s : {"sweep.eps0", "sweep.eps1", "sweep.fraction", "sweep.max_wall_seconds"})
    k.emplace_back(s);
  return k;
}();

const std::vector<std::string> kFamilies = {"zero",     "cosine",   "traveling",
                                            "stokes",   "gaussian", "snapshot"};

}  // namespace

const std::vector<std::string>& SimConfig::keys() { return kSimKeys; }
const std::vector<std::string>& SweepConfig::keys() { return kSweepKeys; }

SimConfig SimConfig::from(const KeyValueConfig& kv) {
  SimConfig c;
  c.grid.nx = kv.get_int("grid.nx", c.grid.nx);
  c.grid.ny = kv.get_int("grid.ny", c.grid.ny);
  c.grid.lx = kv.get_double("grid.lx", c.grid.lx);
  c.grid.ly = kv.get_double("grid.ly", c.grid.ly);

  c.model.dtn_order = DtnOrder(kv.get_int("model.dtn_order", c.model.dtn_order.value()));
  c.model.rhs_form = rhs_form_from_string(kv.get_string("model.rhs_form", "u"));
  c.model.dt = kv.get_double("model.dt", c.model.dt);
  c.model.t_end = kv.get_double("model.t_end", c.model.t_end);
  c.model.dealias = kv.get_bool("model.dealias", c.model.dealias);

  c.initial.family = kv.get_string("initial.family", c.initial.family);
  c.initial.amplitude = kv.get_double("initial.amplitude", c.initial.amplitude);
  c.initial.mode.m1 = kv.get_int("initial.mode1", c.initial.mode.m1);
  c.initial.mode.m2 = kv.get_int("initial.mode2", c.initial.mode.m2);
  c.initial.width = kv.get_double("initial.width", c.initial.width);
  c.initial.path = kv.get_string("initial.path", "");

  const std::string kind = kv.get_string("vorticity.kind", "zero");
  if (kind == "zero") c.vorticity.kind = ProviderKind::zero;
  else if (kind == "static") c.vorticity.kind = ProviderKind::static_trace;
  else if (kind == "analytic") c.vorticity.kind = ProviderKind::analytic;
  else
    throw ConfigError(kv.origin("vorticity.kind") + ": vorticity.kind must be zero, static or analytic");
  c.vorticity.analytic.family =
      analytic_family_from_string(kv.get_string("vorticity.family", "gradient-cosine"));
  c.vorticity.analytic.amplitude = kv.get_double("vorticity.amplitude", 0.0);
  c.vorticity.analytic.mode.m1 = kv.get_int("vorticity.mode1", 1);
  c.vorticity.analytic.mode.m2 = kv.get_int("vorticity.mode2", 0);
  c.vorticity.analytic.frequency = kv.get_double("vorticity.omega", 0.0);
  c.vorticity.analytic.width = kv.get_double("vorticity.width", 1.0);

  c.bootstrap.eps0 = kv.get_double("bootstrap.eps0", c.bootstrap.eps0);
  c.bootstrap.eps1 = kv.get_double("bootstrap.eps1", c.bootstrap.eps1);
  c.bootstrap.delta = kv.get_double("bootstrap.delta", c.bootstrap.delta);
  c.bootstrap.iota = kv.get_double("bootstrap.iota", c.bootstrap.iota);
  c.bootstrap.n_sobolev = kv.get_int("bootstrap.n_sobolev", c.bootstrap.n_sobolev);
  c.monitor = kv.get_bool("bootstrap.monitor", c.monitor);

  c.output.dir = kv.get_string("output.dir", c.output.dir);
  c.output.snapshot_stride = kv.get_int("output.snapshot_stride", c.output.snapshot_stride);
  c.output.csv_stride = kv.get_int("output.csv_stride", c.output.csv_stride);
  c.validate();
  return c;
}

void SimConfig::validate() const {
  const Grid2D g = grid.make();
  model.validate(g);
  bootstrap.validate();
  if (std::find(kFamilies.begin(), kFamilies.end(), initial.family) == kFamilies.end())
    throw ConfigError("initial.family must be one of zero, cosine, traveling, stokes, "
                      "gaussian, snapshot; got '" + initial.family + "'");
  if (!std::isfinite(initial.amplitude)) throw ConfigError("initial.amplitude must be finite");
  if ((initial.family == "cosine" || initial.family == "traveling" ||
       initial.family == "stokes") && initial.mode.is_zero())
    throw ConfigError("initial mode must be nonzero for family '" + initial.family + "'");
  if (initial.family == "gaussian" && !(initial.width > 0.0))
    throw ConfigError("initial.width must be positive");
  if (initial.family == "snapshot") {
    if (initial.path.empty()) throw ConfigError("initial.family = snapshot needs initial.path");
    if (!std::filesystem::is_regular_file(initial.path))
      throw ConfigError("initial.path '" + initial.path + "' does not exist");
  }
  if (output.csv_stride < 1) throw ConfigError("output.csv_stride must be >= 1");
  if (output.snapshot_stride < 0) throw ConfigError("output.snapshot_stride must be >= 0");
}

SweepConfig SweepConfig::from(const KeyValueConfig& kv) {
  SweepConfig s;
  s.cell = SimConfig::from(kv);
  s.eps0 = kv.get_list("sweep.eps0");
  s.eps1 = kv.get_list("sweep.eps1");
  s.fraction = kv.get_double("sweep.fraction", s.fraction);
  s.max_wall_seconds = kv.get_double("sweep.max_wall_seconds", s.max_wall_seconds);
  auto check = [](const std::vector<double>& v, const char* name) {
    if (v.empty()) throw ConfigError(std::string(name) + " must be a non-empty list");
    for (std::size_t n = 0; n < v.size(); ++n) {
      if (!(v[n] > 0.0)) throw ConfigError(std::string(name) + " entries must be positive");
      if (n > 0 && !(v[n] > v[n - 1]))
        throw ConfigError(std::string(name) + " must be sorted ascending");
    }
  };
  check(s.eps0, "sweep.eps0");
  check(s.eps1, "sweep.eps1");
  if (!(s.fraction > 0.0)) throw ConfigError("sweep.fraction must be positive");
  if (!(s.max_wall_seconds > 0.0)) throw ConfigError("sweep.max_wall_seconds must be positive");
  return s;
}

KeyValueConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  KeyValueConfig kv = path.empty() ? KeyValueConfig::parse("", "<none>", kSweepKeys)
                                   : KeyValueConfig::load(path, kSweepKeys);
  for (const std::string& o : overrides) kv.set(o, kSweepKeys);
  return kv;
}

std::string resolve_output_dir(const std::string& from_config, const std::string& cli_out) {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv("ROTWAVE_OUTPUT_DIR"); env != nullptr && *env != '\0')
    return env;
  return from_config;
}

// ---- snapshots

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::string& buf, T v) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  buf.append(bytes, sizeof(T));
}

template <class T>
T take(const std::string& buf, std::size_t& pos, const std::string& path) {
  if (pos + sizeof(T) > buf.size()) throw IoError("snapshot '" + path + "' is truncated");
  char bytes[sizeof(T)];
  std::memcpy(bytes, buf.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  pos += sizeof(T);
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SurfaceState& state) {
  const Grid2D& g = state.grid();
  std::string buf("WWS1");
  buf.reserve(4 + 8 + 24 + 16 * g.size());
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.nx()));
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.ny()));
  put<double>(buf, g.lx());
  put<double>(buf, g.ly());
  put<double>(buf, state.t);
  for (double v : state.h.values()) put<double>(buf, v);
  for (double v : state.phi_omega.values()) put<double>(buf, v);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write snapshot '" + path.string() + "'");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing snapshot '" + path.string() + "'");
}

SurfaceState read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path.string() + "'");
  const std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string name = path.string();
  if (buf.size() < 4 || buf.compare(0, 4, "WWS1") != 0)
    throw InvalidInput("'" + name + "' is not a WWS1 snapshot");
  std::size_t pos = 4;
  const auto nx = take<std::uint32_t>(buf, pos, name);
  const auto ny = take<std::uint32_t>(buf, pos, name);
  const double lx = take<double>(buf, pos, name);
  const double ly = take<double>(buf, pos, name);
  const double t = take<double>(buf, pos, name);
  const Grid2D g(static_cast<int>(nx), static_cast<int>(ny), lx, ly);
  SurfaceState s(g);
  s.t = t;
  for (double& v : s.h.values()) v = take<double>(buf, pos, name);
  for (double& v : s.phi_omega.values()) v = take<double>(buf, pos, name);
  if (pos != buf.size()) throw InvalidInput("snapshot '" + name + "' has trailing bytes");
  return s;
}

// ---- initial data and providers

SurfaceState make_initial_state(const SimConfig& cfg, const Grid2D& g) {
  const InitialSpec& in = cfg.initial;
  if (in.family == "snapshot") {
    SurfaceState s = read_snapshot(in.path);
    if (!(s.grid() == g))
      throw ConfigError("snapshot '" + in.path + "' grid does not match the configured grid");
    return s;
  }
  SurfaceState s(g);
  const double a = in.amplitude;
  const double kx = in.mode.kx(g), ky = in.mode.ky(g);
  const double k = in.mode.kabs(g);
  const double cx = 0.5 * g.lx(), cy = 0.5 * g.ly();
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const double x = g.x(i), y = g.y(j);
      const double th = kx * x + ky * y;
      double h = 0.0, p = 0.0;
      if (in.family == "cosine") {
        h = a * std::cos(th);
      } else if (in.family == "traveling") {
        h = a * std::cos(th);
        p = a / std::sqrt(k) * std::sin(th);
      } else if (in.family == "stokes") {
        h = a * std::cos(th) + 0.5 * a * a * k * std::cos(2.0 * th);
        p = a / std::sqrt(k) * std::sin(th);
      } else if (in.family == "gaussian") {
        const double s1 = 2.0 * std::numbers::pi * (x - cx) / g.lx();
        const double s2 = 2.0 * std::numbers::pi * (y - cy) / g.ly();
        h = a * std::exp((std::cos(s1) + std::cos(s2) - 2.0) / (in.width * in.width));
      }
      s.h(i, j) = h;
      s.phi_omega(i, j) = p;
    }
  }
  return s;
}

VorticityProvider make_provider(const SimConfig& cfg, const Grid2D& g) {
  switch (cfg.vorticity.kind) {
    case ProviderKind::zero:
      return VorticityProvider::zero(g);
    case ProviderKind::static_trace: {
      // The analytic family frozen at t = 0 on a flat surface.
      const VorticityProvider a = VorticityProvider::analytic(g, cfg.vorticity.analytic);
      return VorticityProvider::from_trace(a.trace(0.0, RealField(g)).v_omega);
    }
    case ProviderKind::analytic:
      return VorticityProvider::analytic(g, cfg.vorticity.analytic);
  }
  throw ConfigError("unknown vorticity provider kind");
}

}  // namespace rotwave
