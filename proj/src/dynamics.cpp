#include "cspde/dynamics.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace cspde {

Terms terms_for(EvolutionVariant v) {
  switch (v) {
    case EvolutionVariant::Hamiltonian: return Terms{true, false, false, false};
    case EvolutionVariant::HamiltonianViscous: return Terms{true, false, false, true};
    case EvolutionVariant::LinearFractional: return Terms{true, true, false, true};
    case EvolutionVariant::Nonlinear: return Terms{true, true, true, true};
  }
  return Terms{};
}

Integrator::Integrator(const Grid& grid, const PhysParams& p, EvolutionVariant v, std::optional<ForceSpec> force,
                       double dt)
    : Integrator(grid, p, terms_for(v), force, dt) {}

Integrator::Integrator(const Grid& grid, const PhysParams& p, Terms terms, std::optional<ForceSpec> force, double dt)
    : grid_(grid), p_(p), terms_(terms), dt_(dt), dealias_(grid) {
  p_.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (p_.L_tot != grid.period()) throw ConfigError("params L_tot does not match the grid period");
  if (force) force_.emplace(grid, *force);
  const std::size_t n = grid.size();
  ph_.resize(n);
  ph_inv_.resize(n);
  lap_.resize(n);
  p0_.resize(n);
  phase_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = grid.k(j);
    ph_[j] = terms_.fractional ? multiplier(MultiplierKind::PH, k, p_).real() : 1.0;
    ph_inv_[j] = terms_.fractional ? multiplier(MultiplierKind::PHInv, k, p_).real() : 1.0;
    lap_[j] = multiplier(MultiplierKind::Laplacian, k, p_).real();
    p0_[j] = multiplier(MultiplierKind::P0Tilde, k, p_);
    phase_[j] = Complex(0.0, 2.0 * kPi * p_.c * grid.x(j));
  }
  for (auto* v : {&w_, &lw_, &a_, &r0_, &r1_, &ustar_, &f_, &next_}) v->assign(n, Complex(0.0));
}

void Integrator::rhs(const Complex* u, Complex* out) {
  const std::size_t n = grid_.size();
  const Complex* w = u;
  if (terms_.fractional) {
    for (std::size_t j = 0; j < n; ++j) w_[j] = ph_inv_[j] * u[j];
    w = w_.data();
  }
  const bool nonlinear = terms_.nonlinear && p_.gamma != 0.0;
  if (terms_.transport || nonlinear) {
    lattice_inverse(n, grid_.dk(), w, lw_.data());
    for (std::size_t j = 0; j < n; ++j) lw_[j] *= phase_[j];
    lattice_forward(n, grid_.dx(), lw_.data(), lw_.data());
  }
  if (terms_.transport) {
    for (std::size_t j = 0; j < n; ++j) out[j] = ph_[j] * lw_[j];
  } else {
    std::fill(out, out + n, Complex(0.0));
  }
  if (nonlinear) {
    for (std::size_t j = 0; j < n; ++j) a_[j] = p0_[j] * lw_[j];
    dealias_.product(a_.data(), w, a_.data());
    for (std::size_t j = 0; j < n; ++j) out[j] += p_.gamma * ph_[j] * a_[j];
  }
  if (terms_.viscous && p_.nu != 0.0) {
    for (std::size_t j = 0; j < n; ++j) out[j] += p_.nu * lap_[j] * u[j];
  }
}

void Integrator::noise_increment(NoiseStream& stream, Complex* out) {
  const std::size_t n = grid_.size();
  if (!force_) {
    std::fill(out, out + n, Complex(0.0));
    stream.set_counter(stream.counter() + 1);
    return;
  }
  force_->draw_spectral(stream, out);
  const double s = std::sqrt(dt_);
  for (std::size_t j = 0; j < n; ++j) out[j] *= s;
}

void Integrator::step(std::vector<Complex>& u, NoiseStream& stream, double t, std::uint64_t step_index) {
  const std::size_t n = grid_.size();
  if (u.size() != n) throw ContractError("state length does not match the grid");
  noise_increment(stream, f_.data());
  rhs(u.data(), r0_.data());
  for (std::size_t j = 0; j < n; ++j) ustar_[j] = u[j] + dt_ * r0_[j] + f_[j];
  rhs(ustar_.data(), r1_.data());
  const double h = 0.5 * dt_;
  bool finite = true;
  for (std::size_t j = 0; j < n; ++j) {
    next_[j] = u[j] + h * (r0_[j] + r1_[j]) + f_[j];
    finite = finite && std::isfinite(next_[j].real()) && std::isfinite(next_[j].imag());
  }
  if (!finite) {
    std::ostringstream os;
    os << "non-finite state at step " << step_index + 1 << " (t = " << t + dt_ << ")";
    throw InstabilityError(t + dt_, step_index + 1, os.str());
  }
  u.swap(next_);
}

SimState Integrator::step(const SimState& s) {
  require_space(s.u, Space::Spectral, "heun_step");
  if (!(s.u.grid() == grid_)) throw ContractError("heun_step: state grid does not match the integrator");
  std::vector<Complex> u(s.u.values().begin(), s.u.values().end());
  NoiseStream stream = s.stream;
  step(u, stream, s.t, s.step_index);
  return SimState{s.t + dt_, Field(grid_, Space::Spectral, std::move(u)), s.step_index + 1, stream};
}

Field rhs(const Field& u_hat, EvolutionVariant v, const PhysParams& p) {
  require_space(u_hat, Space::Spectral, "rhs");
  for (const auto& z : u_hat.values())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ContractError("rhs: non-finite input");
  Integrator integ(u_hat.grid(), p, v, std::nullopt, 1.0);
  std::vector<Complex> out(u_hat.size());
  integ.rhs(u_hat.values().data(), out.data());
  return Field(u_hat.grid(), Space::Spectral, std::move(out));
}

SimState heun_step(const SimState& s, double dt, EvolutionVariant v, const PhysParams& p, const ForceSpec& spec) {
  Integrator integ(s.u.grid(), p, v, spec, dt);
  return integ.step(s);
}

StationarityReport stationarity_check(const std::vector<EnergySample>& post, double threshold) {
  StationarityReport r;
  r.threshold = threshold;
  if (post.size() < 4) return r;
  const std::size_t half = post.size() / 2;
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) m1 += post[i].energy;
  for (std::size_t i = half; i < post.size(); ++i) m2 += post[i].energy;
  m1 /= static_cast<double>(half);
  m2 /= static_cast<double>(post.size() - half);
  const double mean = 0.5 * (m1 + m2);
  r.drift = mean > 0.0 ? std::abs(m2 - m1) / mean : 0.0;
  r.stationary = r.drift < threshold;
  return r;
}

SimulationResult run_simulation(const RunConfig& cfg, const RunCallbacks& cb, const std::optional<SimState>& resume) {
  const ResolvedConfig rc = resolve(cfg);
  const Grid grid = rc.grid();
  const PhysParams p = rc.params();
  std::optional<ForceSpec> force;
  if (cfg.forcing != ForcingMode::None) force = rc.force();
  Integrator integ(grid, p, cfg.variant, force, rc.dt);

  std::vector<Complex> u(grid.size(), Complex(0.0));
  std::uint64_t step = 0;
  NoiseStream stream(cfg.seed, cfg.stream, 0);
  if (resume) {
    require_space(resume->u, Space::Spectral, "run_simulation");
    if (!(resume->u.grid() == grid)) throw ConfigError("resume state grid does not match the config");
    u.assign(resume->u.values().begin(), resume->u.values().end());
    step = resume->step_index;
    stream = resume->stream;
  }

  const std::uint64_t total = rc.total_steps();
  const std::uint64_t burn = rc.burn_steps();
  const std::uint64_t interval = rc.interval_steps();
  const std::uint64_t stride = cfg.diagnostic_stride;
  const double dt = rc.dt;

  SimulationResult result;
  std::vector<EnergySample> post_burn;
  std::vector<Complex> phys(grid.size());

  auto state = [&](std::uint64_t s) {
    return SimState{static_cast<double>(s) * dt, Field(grid, Space::Spectral, u), s, stream};
  };

  while (step < total) {
    try {
      integ.step(u, stream, static_cast<double>(step) * dt, step);
    } catch (const InstabilityError&) {
      if (cb.on_instability) cb.on_instability(state(step));
      throw;
    }
    ++step;
    if (step % stride == 0) {
      EnergySample e{static_cast<double>(step) * dt, 0.0, 0.0};
      for (const auto& z : u) e.energy += std::norm(z);
      e.energy *= grid.dk();
      lattice_inverse(grid.size(), grid.dk(), u.data(), phys.data());
      for (const auto& z : phys) e.max_abs = std::max(e.max_abs, std::abs(z));
      if (step >= burn) post_burn.push_back(e);
      if (cb.on_energy) cb.on_energy(e);
      else result.energy.push_back(e);
    }
    if (step >= burn && (step - burn) % interval == 0) {
      if (cb.on_snapshot) cb.on_snapshot(state(step));
      else result.snapshots.push_back(state(step));
    }
  }
  result.stationarity = stationarity_check(post_burn);
  result.final_state = state(step);
  return result;
}

ForceSource stream_forcing(const Grid& grid, const ForceSpec& spec, NoiseStream stream) {
  auto gen = std::make_shared<ForceGenerator>(grid, spec);
  return [gen, stream](std::uint64_t step, Complex* out) {
    NoiseStream s = stream;
    s.set_counter(stream.counter() + step);
    gen->draw_spectral(s, out);
  };
}

namespace {

class Transport {
 public:
  Transport(const Grid& grid, double c, double tau, ShiftPolicy policy) : grid_(grid), policy_(policy) {
    const double m = c * tau / grid.dk();
    if (policy == ShiftPolicy::LatticeExact) {
      const double r = std::round(m);
      if (std::abs(m - r) > 1e-9 * std::max(1.0, std::abs(m)))
        throw ConfigError("characteristic shift c*dt/dk = " + std::to_string(m) + " is not a lattice integer");
      shift_ = static_cast<std::int64_t>(r);
    } else {
      phase_.resize(grid.size());
      for (std::size_t j = 0; j < grid.size(); ++j) phase_[j] = std::polar(1.0, 2.0 * kPi * c * tau * grid.x(j));
    }
    tmp_.resize(grid.size());
  }

  void apply(std::vector<Complex>& w) {
    const std::size_t n = grid_.size();
    if (policy_ == ShiftPolicy::LatticeExact) {
      for (std::size_t j = 0; j < n; ++j) tmp_[grid_.slot(grid_.index(j) + shift_)] = w[j];
      w.swap(tmp_);
      return;
    }
    lattice_inverse(n, grid_.dk(), w.data(), w.data());
    for (std::size_t j = 0; j < n; ++j) w[j] *= phase_[j];
    lattice_forward(n, grid_.dx(), w.data(), w.data());
  }

 private:
  Grid grid_;
  ShiftPolicy policy_;
  std::int64_t shift_ = 0;
  std::vector<Complex> phase_;
  std::vector<Complex> tmp_;
};

}  // namespace

Field exact_linear_evolve(const Grid& grid, const PhysParams& p, const ForceSource& force, double dt,
                          std::uint64_t steps, ShiftPolicy policy, NoiseQuadrature quad) {
  p.validate();
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const std::size_t n = grid.size();
  std::vector<double> ph(n), ph_inv(n);
  for (std::size_t j = 0; j < n; ++j) {
    ph[j] = multiplier(MultiplierKind::PH, grid.k(j), p).real();
    ph_inv[j] = multiplier(MultiplierKind::PHInv, grid.k(j), p).real();
  }
  Transport full(grid, p.c, dt, policy);
  std::optional<Transport> half;
  if (quad == NoiseQuadrature::Midpoint) half.emplace(grid, p.c, 0.5 * dt, policy);

  std::vector<Complex> w(n, Complex(0.0)), g(n);
  const double sq = std::sqrt(dt);
  for (std::uint64_t s = 0; s < steps; ++s) {
    force(s, g.data());
    for (std::size_t j = 0; j < n; ++j) g[j] *= ph_inv[j] * sq;
    if (quad == NoiseQuadrature::Left) {
      for (std::size_t j = 0; j < n; ++j) w[j] += g[j];
      full.apply(w);
    } else {
      full.apply(w);
      half->apply(g);
      for (std::size_t j = 0; j < n; ++j) w[j] += g[j];
    }
  }
  for (std::size_t j = 0; j < n; ++j) w[j] *= ph[j];
  return Field(grid, Space::Spectral, std::move(w));
}

}  // namespace cspde
