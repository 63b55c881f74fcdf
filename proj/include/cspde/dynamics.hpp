#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cspde/config.hpp"
#include "cspde/forcing.hpp"
#include "cspde/operators.hpp"
#include "cspde/random.hpp"

namespace cspde {

// Which deterministic terms enter the right-hand side.
struct Terms {
  bool transport = true;    // the cascade operator
  bool fractional = true;   // conjugate transport by P_H
  bool nonlinear = false;   // gamma P_H[(P0~ L P_H^-1 u)(P_H^-1 u)]
  bool viscous = false;     // nu d^2/dx^2
};

Terms terms_for(EvolutionVariant v);

struct SimState {
  double t = 0.0;
  Field u;  // spectral
  std::uint64_t step_index = 0;
  NoiseStream stream;
};

// Heun predictor-corrector with one force draw per step.
class Integrator {
 public:
  Integrator(const Grid& grid, const PhysParams& p, EvolutionVariant v, std::optional<ForceSpec> force, double dt);
  Integrator(const Grid& grid, const PhysParams& p, Terms terms, std::optional<ForceSpec> force, double dt);

  const Grid& grid() const { return grid_; }
  double dt() const { return dt_; }

  // out may not alias u_hat.
  void rhs(const Complex* u_hat, Complex* out);

  // Force increment F sqrt(dt) in spectral space; consumes one draw.
  void noise_increment(NoiseStream& stream, Complex* out);

  // Advances u_hat (spectral, lattice order) by one step. Throws
  // InstabilityError if the result is not finite; u_hat is left untouched then.
  void step(std::vector<Complex>& u_hat, NoiseStream& stream, double t, std::uint64_t step_index);

  SimState step(const SimState& s);

 private:
  Grid grid_;
  PhysParams p_;
  Terms terms_;
  double dt_;
  std::optional<ForceGenerator> force_;
  std::vector<double> ph_, ph_inv_, lap_;
  std::vector<Complex> p0_;
  std::vector<Complex> phase_;  // 2 i pi c x_j
  DealiasWorkspace dealias_;
  std::vector<Complex> w_, lw_, a_, r0_, r1_, ustar_, f_, next_;
};

Field rhs(const Field& u_hat, EvolutionVariant v, const PhysParams& p);

SimState heun_step(const SimState& s, double dt, EvolutionVariant v, const PhysParams& p, const ForceSpec& spec);

struct EnergySample {
  double t;
  double energy;  // sum |u|^2 dx
  double max_abs;
};

struct StationarityReport {
  double drift = 0.0;  // relative change of mean energy between halves of the sampling window
  double threshold = 0.05;
  bool stationary = false;
};

struct SimulationResult {
  std::vector<SimState> snapshots;
  std::vector<EnergySample> energy;
  StationarityReport stationarity;
  std::optional<SimState> final_state;
};

struct RunCallbacks {
  // Called for each snapshot; when set, snapshots are not kept in the result.
  std::function<void(const SimState&)> on_snapshot;
  // Called with the last finite state before an InstabilityError propagates.
  std::function<void(const SimState&)> on_instability;
  // Called with each diagnostic sample; when set, samples are not kept.
  std::function<void(const EnergySample&)> on_energy;
};

// Integrates from u = 0 (or from `resume`) to t_end. Snapshots are taken at
// step burn_steps + i*interval_steps. The stream counter equals the step index.
SimulationResult run_simulation(const RunConfig& cfg, const RunCallbacks& cb = {},
                                const std::optional<SimState>& resume = std::nullopt);

StationarityReport stationarity_check(const std::vector<EnergySample>& post_burn, double threshold = 0.05);

// How the transport map is realized in the characteristics solver.
enum class ShiftPolicy {
  LatticeExact,  // circular shift of the spectrum; c*dt/dk must be an integer
  Fractional     // multiplication by exp(2 i pi c dt x_j), any shift
};

// Weight applied to the force injected during one step.
enum class NoiseQuadrature {
  Left,     // transported over the full step, lands at k0 + n c dt
  Midpoint  // transported over half a step, matches Heun to second order
};

// Provides the spectral force F (without the sqrt(dt) factor) for a step.
using ForceSource = std::function<void(std::uint64_t step, Complex* f_hat)>;

// Regenerates the draws an Integrator would consume starting from `stream`.
ForceSource stream_forcing(const Grid& grid, const ForceSpec& spec, NoiseStream stream);

// Characteristics solution of the linear fractional dynamics with nu = 0:
// w = P_H^-1 u is transported exactly and receives P_H^-1 F sqrt(dt) every step.
Field exact_linear_evolve(const Grid& grid, const PhysParams& p, const ForceSource& force, double dt,
                          std::uint64_t steps, ShiftPolicy policy = ShiftPolicy::Fractional,
                          NoiseQuadrature quad = NoiseQuadrature::Midpoint);

}  // namespace cspde
