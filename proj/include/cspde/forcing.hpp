#pragma once

#include <vector>

#include "cspde/grid.hpp"
#include "cspde/random.hpp"

namespace cspde {

struct ForceSpec {
  double L = 0.1;
  double L_tot = 1.0;
  bool truncated = true;

  // Throws ConfigError unless 0 < L < L_tot/2.
  void validate() const;

  // C_f(x) = sqrt(pi) L exp(-x^2 / 4L^2)
  double covariance(double x) const;
  // 2 pi L^2 exp(-4 pi^2 k^2 L^2)
  double covariance_hat(double k) const;
  // transform of exp(-x^2 / 2L^2): sqrt(2 pi) L exp(-2 pi^2 k^2 L^2)
  double kernel_hat(double k) const;
};

// exp(-x^2 / (L_tot^2/4 - x^2)) inside the period, 0 at and beyond +-L_tot/2.
double truncation_window(double x, double L_tot);

// Real and imaginary parts independent N(0, dx/2) at every site.
Field sample_white_increment(const Grid& grid, NoiseStream& stream);
Field sample_force(const Grid& grid, const ForceSpec& spec, NoiseStream& stream);
Field sample_truncated_force(const Grid& grid, const ForceSpec& spec, NoiseStream& stream);

// Precomputed kernel and window for drawing one force per time step.
// Consumes exactly one counter value of the stream per draw.
class ForceGenerator {
 public:
  ForceGenerator(const Grid& grid, const ForceSpec& spec);

  // Spectral coefficients of the (truncated, if configured) force.
  void draw_spectral(NoiseStream& stream, Complex* out);
  // Same force in physical space.
  void draw_physical(NoiseStream& stream, Complex* out);

  const Grid& grid() const { return grid_; }
  const ForceSpec& spec() const { return spec_; }

 private:
  void white(NoiseStream& stream, Complex* out);
  void filtered(NoiseStream& stream, Complex* out_hat);

  Grid grid_;
  ForceSpec spec_;
  std::vector<double> kernel_;
  std::vector<double> window_;
};

}  // namespace cspde
