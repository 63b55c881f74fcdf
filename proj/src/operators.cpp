#include "cspde/operators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cspde {

void PhysParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(H) || !finite(gamma) || !finite(nu) || !finite(c) || !finite(L) || !finite(L_tot))
    throw ConfigError("physical parameters must be finite");
  if (H < 0.0 || H >= 1.0) throw ConfigError("H must lie in [0, 1)");
  if (!(L > 0.0) || !(L < L_tot)) throw ConfigError("need 0 < L < L_tot");
  if (c == 0.0) throw ConfigError("cascade rate c must be nonzero");
  if (nu < 0.0) throw ConfigError("viscosity nu must be >= 0");
}

double PhysParams::forcing_variance() const { return std::sqrt(kPi) * L; }

double PhysParams::intermittency() const { return gamma * gamma * forcing_variance() / std::abs(c); }

double PhysParams::viscous_wavenumber() const {
  if (nu == 0.0) return std::numeric_limits<double>::infinity();
  return std::cbrt(std::abs(c) / nu);
}

std::vector<std::string> multifractal_warnings(const PhysParams& p, int q) {
  std::vector<std::string> out;
  const double a = p.intermittency();
  const double bound = std::min(2.0 * p.H / q, 1.0);
  if (!(a < bound)) {
    std::ostringstream os;
    os << "gamma^2 C_f(0)/|c| = " << a << " is not below min(2H/q,1) = " << bound << " at q = " << q;
    out.push_back(os.str());
  }
  return out;
}

const char* to_string(MultiplierKind kind) {
  switch (kind) {
    case MultiplierKind::PH: return "P_H";
    case MultiplierKind::PHInv: return "P_H_INV";
    case MultiplierKind::P0Tilde: return "P0_TILDE";
    case MultiplierKind::Laplacian: return "LAPLACIAN";
  }
  return "?";
}

double reg_norm(double k, double L) { return std::sqrt(k * k + 1.0 / (L * L)); }

Complex multiplier(MultiplierKind kind, double k, const PhysParams& p) {
  switch (kind) {
    case MultiplierKind::PH: return std::pow(reg_norm(k, p.L), -(p.H + 0.5));
    case MultiplierKind::PHInv: return std::pow(reg_norm(k, p.L), p.H + 0.5);
    case MultiplierKind::P0Tilde: return Complex(0.0, -k * std::pow(reg_norm(k, p.L), -1.5));
    case MultiplierKind::Laplacian: return -(2.0 * kPi * k) * (2.0 * kPi * k);
  }
  return 0.0;
}

std::vector<Complex> multiplier_table(MultiplierKind kind, const Grid& grid, const PhysParams& p) {
  std::vector<Complex> t(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) t[j] = multiplier(kind, grid.k(j), p);
  return t;
}

Field apply_multiplier(const Field& u_hat, MultiplierKind kind, const PhysParams& p) {
  require_space(u_hat, Space::Spectral, "apply_multiplier");
  std::vector<Complex> out(u_hat.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = multiplier(kind, u_hat.grid().k(j), p) * u_hat[j];
  return Field(u_hat.grid(), Space::Spectral, std::move(out));
}

Field apply_L(const Field& u, const PhysParams& p) {
  require_space(u, Space::Physical, "apply_L");
  std::vector<Complex> out(u.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = Complex(0.0, 2.0 * kPi * p.c * u.grid().x(j)) * u[j];
  return Field(u.grid(), Space::Physical, std::move(out));
}

std::size_t padded_size(std::size_t n) {
  std::size_t m = (3 * n + 1) / 2;
  if (m % 2 != 0) ++m;
  return m;
}

DealiasWorkspace::DealiasWorkspace(const Grid& grid)
    : grid_(grid), m_(padded_size(grid.size())), pa_(m_), pb_(m_) {}

void DealiasWorkspace::pad(const Complex* src, std::vector<Complex>& dst) const {
  const std::size_t n = grid_.size();
  const std::size_t off = m_ / 2 - n / 2;
  std::fill(dst.begin(), dst.end(), Complex(0.0));
  for (std::size_t j = 0; j < n; ++j) dst[j + off] = src[j];
}

void DealiasWorkspace::product(const Complex* a_hat, const Complex* b_hat, Complex* out_hat) {
  const std::size_t n = grid_.size();
  const double dk = grid_.dk();
  const double dxm = grid_.period() / static_cast<double>(m_);
  pad(a_hat, pa_);
  pad(b_hat, pb_);
  lattice_inverse(m_, dk, pa_.data(), pa_.data());
  lattice_inverse(m_, dk, pb_.data(), pb_.data());
  for (std::size_t j = 0; j < m_; ++j) pa_[j] *= pb_[j];
  lattice_forward(m_, dxm, pa_.data(), pa_.data());
  const std::size_t off = m_ / 2 - n / 2;
  for (std::size_t j = 0; j < n; ++j) out_hat[j] = pa_[j + off];
}

Field dealias_product(const Field& a, const Field& b) {
  require_same_grid(a, b, "dealias_product");
  const Field ah = a.space() == Space::Spectral ? a : forward_transform(a);
  const Field bh = b.space() == Space::Spectral ? b : forward_transform(b);
  std::vector<Complex> out(a.size());
  DealiasWorkspace ws(a.grid());
  ws.product(ah.values().data(), bh.values().data(), out.data());
  return Field(a.grid(), Space::Spectral, std::move(out));
}

}  // namespace cspde
