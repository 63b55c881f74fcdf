#pragma once

#include <string>
#include <vector>

#include "cspde/grid.hpp"
#include "cspde/operators.hpp"
#include "cspde/random.hpp"

namespace cspde {

enum class SynthKind { Fgf, LogField, LogFieldOdd, Gmc, GmcOdd, Multifractal };

const char* to_string(SynthKind k);
SynthKind parse_synth_kind(const std::string& s);

struct SynthField {
  SynthKind kind;
  double H = 0.0;
  double gamma = 0.0;
  Field values;  // physical
  std::vector<std::string> warnings;
};

// Per-site variance sigma^2 = C_f(0) / (2|c| dx) of the lattice white surrogate.
double white_surrogate_variance(const Grid& grid, const PhysParams& p);

// i.i.d. circular complex Gaussian with E|w|^2 = sigma^2. Consumes one draw.
Field sample_white_surrogate(const Grid& grid, const PhysParams& p, NoiseStream& stream);

// P_H applied to the white surrogate. H in [0, 1).
SynthField synth_fgf(double H, const Grid& grid, const PhysParams& p, NoiseStream& stream);

// P_0 (or the odd P0~ when odd) applied to the white surrogate.
SynthField synth_log_field(bool odd, const Grid& grid, const PhysParams& p, NoiseStream& stream);

// exp(gamma v_0), or exp(gamma v~_0) when odd.
SynthField synth_gmc(double gamma, bool odd, const Grid& grid, const PhysParams& p, NoiseStream& stream);

// P_H( exp(gamma P0~ w) w ) with the product de-aliased.
SynthField synth_multifractal(double H, double gamma, const Grid& grid, const PhysParams& p, NoiseStream& stream);

// Generic dispatcher used by the command line.
SynthField synthesize(SynthKind kind, const Grid& grid, const PhysParams& p, NoiseStream& stream);

}  // namespace cspde
