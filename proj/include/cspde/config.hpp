#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cspde/forcing.hpp"
#include "cspde/operators.hpp"

namespace cspde {

enum class EvolutionVariant { Hamiltonian, HamiltonianViscous, LinearFractional, Nonlinear };

const char* to_string(EvolutionVariant v);
// Accepts "hamiltonian", "hamiltonian_viscous", "linear_fractional", "nonlinear" (any case).
EvolutionVariant parse_variant(const std::string& s);

enum class ForcingMode { Truncated, Full, None };

const char* to_string(ForcingMode m);
ForcingMode parse_forcing(const std::string& s);

// A reproducible experiment description. Optional fields fall back to
// derived defaults, see resolve().
struct RunConfig {
  EvolutionVariant variant = EvolutionVariant::Nonlinear;
  std::size_t N = 4096;
  double L_tot = 1.0;
  double L = 0.1;
  double H = 1.0 / 3.0;
  double gamma = 0.0;
  std::optional<double> nu;
  double c = 10.0;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<double> burn_in;
  std::optional<double> snapshot_interval;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  double region = 0.2;
  std::string out = "run";
  ForcingMode forcing = ForcingMode::Truncated;
  std::uint64_t diagnostic_stride = 1;
};

// Viscosity paired with N in the reference parameter table
// (2^12:1e-5, 2^13:1e-6, 2^14:1e-7, 2^16:1e-9); other sizes take the
// entry of the largest listed N below them, 1e-5 below 2^12.
double default_viscosity(std::size_t N);

// Fully populated config: every optional is filled.
struct ResolvedConfig {
  RunConfig cfg;
  double nu;
  double dt;
  double t_end;
  double burn_in;
  double snapshot_interval;

  Grid grid() const { return Grid(cfg.N, cfg.L_tot); }
  PhysParams params() const;
  ForceSpec force() const;
  std::uint64_t total_steps() const;
  std::uint64_t burn_steps() const;
  std::uint64_t interval_steps() const;
};

// Fills defaults and validates. Throws ConfigError.
ResolvedConfig resolve(const RunConfig& cfg);

// key=value lines, '#' comments. Unknown keys and bad values raise
// ConfigError with the line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical key=value text covering every field that was set.
std::string render_config(const RunConfig& cfg);
// Same text with all derived defaults written out.
std::string render_resolved(const ResolvedConfig& rc);

// FNV-1a of the canonical resolved rendering, as 16 hex digits.
std::string config_hash(const ResolvedConfig& rc);
std::string fnv1a_hex(const std::string& s);

}  // namespace cspde
