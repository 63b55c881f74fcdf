#pragma once

#include <string>
#include <vector>

#include "cspde/grid.hpp"

namespace cspde {

struct PhysParams {
  double H = 1.0 / 3.0;
  double gamma = 0.0;
  double nu = 0.0;
  double c = 10.0;
  double L = 0.1;
  double L_tot = 1.0;

  // Throws ConfigError unless 0 <= H < 1, 0 < L < L_tot, c != 0, nu >= 0.
  void validate() const;

  // C_f(0) = sqrt(pi) L for the Gaussian forcing kernel.
  double forcing_variance() const;
  // gamma^2 C_f(0) / |c|
  double intermittency() const;
  // (|c|/nu)^(1/3); +inf for nu = 0.
  double viscous_wavenumber() const;
};

// Validity of the multifractal ansatz at moment order q: gamma^2 C_f(0)/|c| < min(2H/q, 1).
// Returns human-readable warnings, empty when inside the bound.
std::vector<std::string> multifractal_warnings(const PhysParams& p, int q = 1);

enum class MultiplierKind { PH, PHInv, P0Tilde, Laplacian };

const char* to_string(MultiplierKind kind);

// sqrt(k^2 + 1/L^2)
double reg_norm(double k, double L);

Complex multiplier(MultiplierKind kind, double k, const PhysParams& p);

// Symbol sampled on the k-lattice of the grid.
std::vector<Complex> multiplier_table(MultiplierKind kind, const Grid& grid, const PhysParams& p);

Field apply_multiplier(const Field& u_hat, MultiplierKind kind, const PhysParams& p);

// Pointwise multiplication by 2 i pi c x_j.
Field apply_L(const Field& u, const PhysParams& p);

// Smallest even integer >= 3N/2.
std::size_t padded_size(std::size_t n);

// Spectral coefficients of the pointwise product a*b, computed on a
// 3/2-refined lattice and truncated back to N modes.
Field dealias_product(const Field& a, const Field& b);

// Reusable buffers for repeated de-aliased products of spectra on one grid.
class DealiasWorkspace {
 public:
  explicit DealiasWorkspace(const Grid& grid);

  // out_hat may alias a_hat or b_hat.
  void product(const Complex* a_hat, const Complex* b_hat, Complex* out_hat);

  std::size_t padded() const { return m_; }

 private:
  void pad(const Complex* src, std::vector<Complex>& dst) const;

  Grid grid_;
  std::size_t m_;
  std::vector<Complex> pa_;
  std::vector<Complex> pb_;
};

}  // namespace cspde
