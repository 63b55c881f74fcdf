#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "cspde/grid.hpp"
#include "cspde/random.hpp"

namespace testing {

using cspde::Complex;
using cspde::kPi;

inline std::vector<Complex> random_values(std::size_t n, std::uint64_t seed) {
  cspde::NoiseStream s(seed, 99);
  std::vector<Complex> v(n);
  s.draw(v);
  return v;
}

inline cspde::Field random_field(const cspde::Grid& g, cspde::Space sp, std::uint64_t seed) {
  return cspde::Field(g, sp, random_values(g.size(), seed));
}

// O(N^2) sums straight from the definitions, accumulated in long double.
inline std::vector<Complex> dft_forward(const cspde::Grid& g, std::span<const Complex> u) {
  const std::size_t n = g.size();
  std::vector<Complex> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    std::complex<long double> s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long double ph = -2.0L * 3.14159265358979323846264338327950288L * g.index(m) * g.index(j) / n;
      s += std::complex<long double>(u[j].real(), u[j].imag()) * std::complex<long double>(std::cos(ph), std::sin(ph));
    }
    s *= g.dx();
    out[m] = Complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  }
  return out;
}

inline double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (auto z : v) m = std::max(m, std::abs(z));
  return m;
}

inline double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double rel_l2(std::span<const Complex> a, std::span<const Complex> b) {
  double n = 0.0, d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    n += std::norm(a[i] - b[i]);
    d += std::norm(b[i]);
  }
  return std::sqrt(n / d);
}

inline cspde::Field mode(const cspde::Grid& g, std::int64_t m, Complex amp = 1.0) {
  std::vector<Complex> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = amp * std::polar(1.0, 2.0 * kPi * m * g.dk() * g.x(j));
  return cspde::Field(g, cspde::Space::Physical, std::move(v));
}

}  // namespace testing
