#include "cspde/forcing.hpp"

#include <cmath>

namespace cspde {

void ForceSpec::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("forcing length L must be positive");
  if (!(L_tot > 0.0) || !std::isfinite(L_tot)) throw ConfigError("L_tot must be positive");
  if (!(L < 0.5 * L_tot)) throw ConfigError("forcing kernel too wide: need L < L_tot/2");
}

double ForceSpec::covariance(double x) const { return std::sqrt(kPi) * L * std::exp(-x * x / (4.0 * L * L)); }

double ForceSpec::covariance_hat(double k) const {
  return 2.0 * kPi * L * L * std::exp(-4.0 * kPi * kPi * k * k * L * L);
}

double ForceSpec::kernel_hat(double k) const {
  return std::sqrt(2.0 * kPi) * L * std::exp(-2.0 * kPi * kPi * k * k * L * L);
}

double truncation_window(double x, double L_tot) {
  const double h = 0.25 * L_tot * L_tot - x * x;
  if (h <= 0.0) return 0.0;
  return std::exp(-x * x / h);
}

ForceGenerator::ForceGenerator(const Grid& grid, const ForceSpec& spec)
    : grid_(grid), spec_(spec), kernel_(grid.size()), window_(grid.size()) {
  spec_.validate();
  if (spec_.L_tot != grid.period()) throw ConfigError("force L_tot does not match the grid period");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    kernel_[j] = spec_.kernel_hat(grid.k(j));
    window_[j] = truncation_window(grid.x(j), grid.period());
  }
}

void ForceGenerator::white(NoiseStream& stream, Complex* out) {
  stream.draw(std::span<Complex>(out, grid_.size()));
  const double s = std::sqrt(0.5 * grid_.dx());
  for (std::size_t j = 0; j < grid_.size(); ++j) out[j] *= s;
}

// sum_j K(x_i - x_j) dW_j, built as inverse(K_hat . forward(dW)) / dx
void ForceGenerator::filtered(NoiseStream& stream, Complex* out_hat) {
  const std::size_t n = grid_.size();
  white(stream, out_hat);
  lattice_forward(n, grid_.dx(), out_hat, out_hat);
  const double inv_dx = 1.0 / grid_.dx();
  for (std::size_t j = 0; j < n; ++j) out_hat[j] *= kernel_[j] * inv_dx;
}

void ForceGenerator::draw_physical(NoiseStream& stream, Complex* out) {
  const std::size_t n = grid_.size();
  filtered(stream, out);
  lattice_inverse(n, grid_.dk(), out, out);
  if (spec_.truncated)
    for (std::size_t j = 0; j < n; ++j) out[j] *= window_[j];
}

void ForceGenerator::draw_spectral(NoiseStream& stream, Complex* out) {
  if (!spec_.truncated) {
    filtered(stream, out);
    return;
  }
  draw_physical(stream, out);
  lattice_forward(grid_.size(), grid_.dx(), out, out);
}

Field sample_white_increment(const Grid& grid, NoiseStream& stream) {
  std::vector<Complex> v(grid.size());
  stream.draw(v);
  const double s = std::sqrt(0.5 * grid.dx());
  for (auto& z : v) z *= s;
  return Field(grid, Space::Physical, std::move(v));
}

Field sample_force(const Grid& grid, const ForceSpec& spec, NoiseStream& stream) {
  ForceSpec s = spec;
  s.truncated = false;
  ForceGenerator gen(grid, s);
  std::vector<Complex> v(grid.size());
  gen.draw_physical(stream, v.data());
  return Field(grid, Space::Physical, std::move(v));
}

Field sample_truncated_force(const Grid& grid, const ForceSpec& spec, NoiseStream& stream) {
  ForceSpec s = spec;
  s.truncated = true;
  ForceGenerator gen(grid, s);
  std::vector<Complex> v(grid.size());
  gen.draw_physical(stream, v.data());
  return Field(grid, Space::Physical, std::move(v));
}

}  // namespace cspde
