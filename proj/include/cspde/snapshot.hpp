#pragma once

#include <cstdint>
#include <string>

#include "cspde/config.hpp"
#include "cspde/dynamics.hpp"

namespace cspde {

// Binary field file, all little-endian:
//   "CSPDE1" | u32 version | u64 N | f64 L_tot, t, dt | f64 H, gamma, nu, c, L | N x (f64 Re, f64 Im)
// The payload is the spectral field in lattice order.
struct Snapshot {
  std::uint32_t version = 1;
  double t = 0.0;
  double dt = 0.0;
  PhysParams params;
  Field u;  // spectral
};

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 6 + 4 + 8 + 3 * 8 + 5 * 8;

// Written to a temporary name and renamed, so a failed write leaves no partial file.
void write_snapshot(const Snapshot& s, const std::string& path);
// Throws FormatError for bad magic, version mismatch or wrong payload length.
Snapshot read_snapshot(const std::string& path);

Snapshot make_snapshot(const SimState& s, double dt, const PhysParams& p);
// Rebuilds the integrator state: step = round(t / dt), stream counter = step,
// seed and stream id from the config. Throws ConfigError if the file does not match the config.
SimState resume_state(const Snapshot& s, const ResolvedConfig& rc);

std::string snapshot_name(std::uint64_t index);

}  // namespace cspde
