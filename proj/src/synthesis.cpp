#include "cspde/synthesis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace cspde {

const char* to_string(SynthKind k) {
  switch (k) {
    case SynthKind::Fgf: return "fgf";
    case SynthKind::LogField: return "log_field";
    case SynthKind::LogFieldOdd: return "log_field_odd";
    case SynthKind::Gmc: return "gmc";
    case SynthKind::GmcOdd: return "gmc_odd";
    case SynthKind::Multifractal: return "multifractal";
  }
  return "?";
}

SynthKind parse_synth_kind(const std::string& s) {
  std::string v = s;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return std::tolower(ch); });
  for (auto k : {SynthKind::Fgf, SynthKind::LogField, SynthKind::LogFieldOdd, SynthKind::Gmc, SynthKind::GmcOdd,
                 SynthKind::Multifractal})
    if (v == to_string(k)) return k;
  throw ConfigError("unknown synthesis kind '" + s + "'");
}

double white_surrogate_variance(const Grid& grid, const PhysParams& p) {
  return p.forcing_variance() / (2.0 * std::abs(p.c) * grid.dx());
}

Field sample_white_surrogate(const Grid& grid, const PhysParams& p, NoiseStream& stream) {
  std::vector<Complex> w(grid.size());
  stream.draw(w);
  const double s = std::sqrt(0.5 * white_surrogate_variance(grid, p));
  for (auto& z : w) z *= s;
  return Field(grid, Space::Physical, std::move(w));
}

namespace {

void check(const Grid& grid, const PhysParams& p) {
  if (!(p.L > 0.0) || !(p.L < grid.period())) throw ConfigError("need 0 < L < L_tot");
  if (p.c == 0.0 || !std::isfinite(p.c)) throw ConfigError("cascade rate c must be nonzero");
}

std::vector<Complex> white_spectrum(const Grid& grid, const PhysParams& p, NoiseStream& stream) {
  Field w = sample_white_surrogate(grid, p, stream);
  std::vector<Complex> out(grid.size());
  lattice_forward(grid.size(), grid.dx(), w.values().data(), out.data());
  return out;
}

// spectral multiplier then back to physical space, in place
void filter_to_physical(const Grid& grid, std::vector<Complex>& spec, MultiplierKind kind, const PhysParams& p) {
  for (std::size_t j = 0; j < grid.size(); ++j) spec[j] *= multiplier(kind, grid.k(j), p);
  lattice_inverse(grid.size(), grid.dk(), spec.data(), spec.data());
}

std::vector<std::string> gmc_warnings(double gamma, const PhysParams& p) {
  std::vector<std::string> out;
  const double a = gamma * gamma * p.forcing_variance() / std::abs(p.c);
  if (!(a < 1.0)) {
    std::ostringstream os;
    os << "gamma^2 C_f(0)/|c| = " << a << " is not below 1; second moment of the chaos is not controlled";
    out.push_back(os.str());
  }
  return out;
}

}  // namespace

SynthField synth_fgf(double H, const Grid& grid, const PhysParams& p, NoiseStream& stream) {
  check(grid, p);
  if (!(H >= 0.0 && H < 1.0)) throw ConfigError("H must lie in [0, 1)");
  PhysParams q = p;
  q.H = H;
  auto spec = white_spectrum(grid, q, stream);
  filter_to_physical(grid, spec, MultiplierKind::PH, q);
  return SynthField{SynthKind::Fgf, H, 0.0, Field(grid, Space::Physical, std::move(spec)), {}};
}

SynthField synth_log_field(bool odd, const Grid& grid, const PhysParams& p, NoiseStream& stream) {
  check(grid, p);
  PhysParams q = p;
  q.H = 0.0;
  auto spec = white_spectrum(grid, q, stream);
  filter_to_physical(grid, spec, odd ? MultiplierKind::P0Tilde : MultiplierKind::PH, q);
  return SynthField{odd ? SynthKind::LogFieldOdd : SynthKind::LogField, 0.0, 0.0,
                    Field(grid, Space::Physical, std::move(spec)), {}};
}

SynthField synth_gmc(double gamma, bool odd, const Grid& grid, const PhysParams& p, NoiseStream& stream) {
  SynthField v = synth_log_field(odd, grid, p, stream);
  std::vector<Complex> m(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) m[j] = std::exp(gamma * v.values[j]);
  return SynthField{odd ? SynthKind::GmcOdd : SynthKind::Gmc, 0.0, gamma, Field(grid, Space::Physical, std::move(m)),
                    gmc_warnings(gamma, p)};
}

SynthField synth_multifractal(double H, double gamma, const Grid& grid, const PhysParams& p, NoiseStream& stream) {
  check(grid, p);
  if (!(H > 0.0 && H < 1.0)) throw ConfigError("H must lie in (0, 1) for the multifractal field");
  PhysParams q = p;
  q.H = H;
  q.gamma = gamma;
  auto w_hat = white_spectrum(grid, q, stream);
  std::vector<Complex> z_hat = w_hat;
  if (gamma != 0.0) {
    std::vector<Complex> e(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) e[j] = multiplier(MultiplierKind::P0Tilde, grid.k(j), q) * w_hat[j];
    lattice_inverse(grid.size(), grid.dk(), e.data(), e.data());
    for (auto& z : e) z = std::exp(gamma * z);
    lattice_forward(grid.size(), grid.dx(), e.data(), e.data());
    DealiasWorkspace ws(grid);
    ws.product(e.data(), w_hat.data(), z_hat.data());
  }
  filter_to_physical(grid, z_hat, MultiplierKind::PH, q);
  return SynthField{SynthKind::Multifractal, H, gamma, Field(grid, Space::Physical, std::move(z_hat)),
                    multifractal_warnings(q, 1)};
}

SynthField synthesize(SynthKind kind, const Grid& grid, const PhysParams& p, NoiseStream& stream) {
  switch (kind) {
    case SynthKind::Fgf: return synth_fgf(p.H, grid, p, stream);
    case SynthKind::LogField: return synth_log_field(false, grid, p, stream);
    case SynthKind::LogFieldOdd: return synth_log_field(true, grid, p, stream);
    case SynthKind::Gmc: return synth_gmc(p.gamma, false, grid, p, stream);
    case SynthKind::GmcOdd: return synth_gmc(p.gamma, true, grid, p, stream);
    case SynthKind::Multifractal: return synth_multifractal(p.H, p.gamma, grid, p, stream);
  }
  throw ConfigError("unknown synthesis kind");
}

}  // namespace cspde
