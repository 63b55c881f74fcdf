#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cspde/errors.hpp"

namespace cspde {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(std::size_t n);

// Periodic lattice x_j = (j - N/2 + 1) dx, k_j = (j - N/2 + 1) dk, j = 0..N-1.
class Grid {
 public:
  Grid(std::size_t n, double l_tot);

  std::size_t size() const { return n_; }
  double period() const { return l_tot_; }
  double dx() const { return l_tot_ / static_cast<double>(n_); }
  double dk() const { return 1.0 / l_tot_; }

  // Signed lattice index of slot j, in {-N/2+1, ..., N/2}.
  std::int64_t index(std::size_t j) const {
    return static_cast<std::int64_t>(j) - static_cast<std::int64_t>(n_ / 2) + 1;
  }
  // Slot holding signed index m (m taken modulo N).
  std::size_t slot(std::int64_t m) const;
  std::size_t origin() const { return n_ / 2 - 1; }

  double x(std::size_t j) const { return static_cast<double>(index(j)) * dx(); }
  double k(std::size_t j) const { return static_cast<double>(index(j)) * dk(); }

  std::vector<double> x_lattice() const;
  std::vector<double> k_lattice() const;

  bool operator==(const Grid& o) const { return n_ == o.n_ && l_tot_ == o.l_tot_; }

 private:
  std::size_t n_;
  double l_tot_;
};

enum class Space { Physical, Spectral };

const char* to_string(Space s);

// Lattice-ordered values tagged with their space. Immutable once built.
class Field {
 public:
  Field(const Grid& grid, Space space, std::vector<Complex> values);

  static Field zeros(const Grid& grid, Space space);

  const Grid& grid() const { return grid_; }
  Space space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  const Complex& operator[](std::size_t j) const { return values_[j]; }
  std::span<const Complex> values() const { return values_; }
  const std::vector<Complex>& data() const { return values_; }

 private:
  Grid grid_;
  Space space_;
  std::vector<Complex> values_;
};

// u_hat(k_m) = dx sum_j u(x_j) exp(-2 i pi k_m x_j)
Field forward_transform(const Field& u);
// u(x_j) = dk sum_m u_hat(k_m) exp(2 i pi k_m x_j)
Field inverse_transform(const Field& u_hat);

// Same transforms on raw lattice-ordered buffers of any even length n.
// `in` and `out` may alias. scale is dx for forward and dk for inverse.
void lattice_forward(std::size_t n, double scale, const Complex* in, Complex* out);
void lattice_inverse(std::size_t n, double scale, const Complex* in, Complex* out);

void require_space(const Field& u, Space expected, const char* op);
void require_same_grid(const Field& a, const Field& b, const char* op);

}  // namespace cspde
