#include "cspde/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cspde/text.hpp"

namespace cspde {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

}  // namespace

const char* to_string(EvolutionVariant v) {
  switch (v) {
    case EvolutionVariant::Hamiltonian: return "hamiltonian";
    case EvolutionVariant::HamiltonianViscous: return "hamiltonian_viscous";
    case EvolutionVariant::LinearFractional: return "linear_fractional";
    case EvolutionVariant::Nonlinear: return "nonlinear";
  }
  return "?";
}

EvolutionVariant parse_variant(const std::string& s) {
  const std::string v = lower(std::string(trim(s)));
  if (v == "hamiltonian") return EvolutionVariant::Hamiltonian;
  if (v == "hamiltonian_viscous") return EvolutionVariant::HamiltonianViscous;
  if (v == "linear_fractional") return EvolutionVariant::LinearFractional;
  if (v == "nonlinear") return EvolutionVariant::Nonlinear;
  throw ConfigError("unknown variant '" + s + "'");
}

const char* to_string(ForcingMode m) {
  switch (m) {
    case ForcingMode::Truncated: return "truncated";
    case ForcingMode::Full: return "full";
    case ForcingMode::None: return "none";
  }
  return "?";
}

ForcingMode parse_forcing(const std::string& s) {
  const std::string v = lower(std::string(trim(s)));
  if (v == "truncated") return ForcingMode::Truncated;
  if (v == "full") return ForcingMode::Full;
  if (v == "none") return ForcingMode::None;
  throw ConfigError("unknown forcing mode '" + s + "'");
}

double default_viscosity(std::size_t N) {
  if (N >= 65536) return 1e-9;
  if (N >= 16384) return 1e-7;
  if (N >= 8192) return 1e-6;
  return 1e-5;
}

PhysParams ResolvedConfig::params() const {
  PhysParams p;
  p.H = cfg.H;
  p.gamma = cfg.gamma;
  p.nu = nu;
  p.c = cfg.c;
  p.L = cfg.L;
  p.L_tot = cfg.L_tot;
  return p;
}

ForceSpec ResolvedConfig::force() const {
  return ForceSpec{cfg.L, cfg.L_tot, cfg.forcing != ForcingMode::Full};
}

std::uint64_t ResolvedConfig::total_steps() const { return static_cast<std::uint64_t>(std::llround(t_end / dt)); }

std::uint64_t ResolvedConfig::burn_steps() const {
  return static_cast<std::uint64_t>(std::ceil(burn_in / dt - 1e-9));
}

std::uint64_t ResolvedConfig::interval_steps() const {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(snapshot_interval / dt)));
}

ResolvedConfig resolve(const RunConfig& cfg) {
  ResolvedConfig rc;
  rc.cfg = cfg;
  const Grid grid(cfg.N, cfg.L_tot);
  rc.nu = cfg.nu.value_or(default_viscosity(cfg.N));
  rc.dt = cfg.dt.value_or(grid.dx());
  const PhysParams p = rc.params();
  p.validate();
  if (!(rc.dt > 0.0) || !std::isfinite(rc.dt)) throw ConfigError("dt must be positive");
  if (!(cfg.region > 0.0) || cfg.region > 0.5) throw ConfigError("region fraction must lie in (0, 0.5]");
  if (cfg.forcing != ForcingMode::None) rc.force().validate();
  if (cfg.diagnostic_stride == 0) throw ConfigError("diagnostic_stride must be >= 1");
  const double ac = std::abs(cfg.c);
  if (cfg.burn_in) {
    rc.burn_in = *cfg.burn_in;
  } else {
    // time for the cascade to carry forced modes past the viscous cutoff
    const double k_top = std::min(p.viscous_wavenumber(), 0.5 * cfg.N * grid.dk());
    rc.burn_in = std::max(2.0 * cfg.L_tot * std::max(1.0, 1.0 / ac), (k_top + 1.0 / cfg.L) / ac);
  }
  rc.snapshot_interval = cfg.snapshot_interval.value_or(cfg.L / ac);
  rc.t_end = cfg.t_end.value_or(rc.burn_in + 200.0 * rc.snapshot_interval);
  if (!(rc.burn_in >= 0.0) || !std::isfinite(rc.burn_in)) throw ConfigError("burn_in must be >= 0");
  if (!(rc.snapshot_interval > 0.0) || !std::isfinite(rc.snapshot_interval))
    throw ConfigError("snapshot_interval must be positive");
  if (!(rc.t_end >= 0.0) || !std::isfinite(rc.t_end)) throw ConfigError("t_end must be >= 0");
  return rc;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ConfigError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected key=value");
    const std::string key = lower(std::string(trim(line.substr(0, eq))));
    const std::string_view val = trim(line.substr(eq + 1));
    auto num = [&]() {
      double v;
      if (!parse_double(val, v) || !std::isfinite(v)) fail("cannot parse '" + std::string(val) + "' as a number for " + key);
      return v;
    };
    auto uint = [&]() {
      std::uint64_t v;
      if (!parse_u64(val, v)) fail("cannot parse '" + std::string(val) + "' as an unsigned integer for " + key);
      return v;
    };
    try {
      if (key == "variant") cfg.variant = parse_variant(std::string(val));
      else if (key == "n") {
        const auto n = uint();
        if (!is_power_of_two(n) || n < 2) fail("N must be a power of two, got " + std::string(val));
        cfg.N = n;
      } else if (key == "l_tot") cfg.L_tot = num();
      else if (key == "l") cfg.L = num();
      else if (key == "h") cfg.H = num();
      else if (key == "gamma") cfg.gamma = num();
      else if (key == "nu") cfg.nu = num();
      else if (key == "c") cfg.c = num();
      else if (key == "dt") cfg.dt = num();
      else if (key == "t_end") cfg.t_end = num();
      else if (key == "burn_in") cfg.burn_in = num();
      else if (key == "snapshot_interval") cfg.snapshot_interval = num();
      else if (key == "seed") cfg.seed = uint();
      else if (key == "stream") cfg.stream = uint();
      else if (key == "region") cfg.region = num();
      else if (key == "out") cfg.out = std::string(val);
      else if (key == "forcing") cfg.forcing = parse_forcing(std::string(val));
      else if (key == "diagnostic_stride") cfg.diagnostic_stride = uint();
      else fail("unknown key '" + key + "'");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      fail(msg);
    }
  }
  try {
    resolve(cfg);
  } catch (const ConfigError& e) {
    throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

namespace {

void put(std::ostringstream& os, const char* key, const std::string& v) { os << key << '=' << v << '\n'; }

}  // namespace

std::string render_config(const RunConfig& c) {
  std::ostringstream os;
  put(os, "variant", to_string(c.variant));
  put(os, "N", std::to_string(c.N));
  put(os, "L_tot", format_double(c.L_tot));
  put(os, "L", format_double(c.L));
  put(os, "H", format_double(c.H));
  put(os, "gamma", format_double(c.gamma));
  if (c.nu) put(os, "nu", format_double(*c.nu));
  put(os, "c", format_double(c.c));
  if (c.dt) put(os, "dt", format_double(*c.dt));
  if (c.t_end) put(os, "t_end", format_double(*c.t_end));
  if (c.burn_in) put(os, "burn_in", format_double(*c.burn_in));
  if (c.snapshot_interval) put(os, "snapshot_interval", format_double(*c.snapshot_interval));
  put(os, "seed", std::to_string(c.seed));
  put(os, "stream", std::to_string(c.stream));
  put(os, "region", format_double(c.region));
  put(os, "out", c.out);
  put(os, "forcing", to_string(c.forcing));
  put(os, "diagnostic_stride", std::to_string(c.diagnostic_stride));
  return os.str();
}

std::string render_resolved(const ResolvedConfig& rc) {
  RunConfig c = rc.cfg;
  c.nu = rc.nu;
  c.dt = rc.dt;
  c.t_end = rc.t_end;
  c.burn_in = rc.burn_in;
  c.snapshot_interval = rc.snapshot_interval;
  return render_config(c);
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const ResolvedConfig& rc) {
  // the output directory does not change the physics
  ResolvedConfig copy = rc;
  copy.cfg.out.clear();
  return fnv1a_hex(render_resolved(copy));
}

}  // namespace cspde
