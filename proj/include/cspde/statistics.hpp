#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "cspde/grid.hpp"

namespace cspde {

struct StatsTable {
  std::string estimator;
  std::string abscissa_name;  // "k" or "ell" or "x"
  std::vector<double> abscissa;
  std::vector<double> estimate;   // NaN marks an undefined entry
  std::vector<double> std_error;
  std::vector<std::uint64_t> n_samples;  // per row
  std::uint64_t n_fields = 0;
  std::string config_hash;

  std::size_t rows() const { return abscissa.size(); }
};

struct HomogeneousRegion {
  double fraction = 0.2;  // points with |x| < fraction * L_tot
};

// Lattice slots j with |x_j| < fraction * L_tot, in increasing order.
std::vector<std::size_t> region_slots(const Grid& grid, HomogeneousRegion region);

// Log-spaced distinct lags m (in units of dx), about per_decade per decade, 1 <= m <= max_lag.
std::vector<std::size_t> scale_set(std::size_t max_lag, double per_decade = 25.0);

// Default lags for increments: up to half the region width.
std::vector<std::size_t> default_scales(const Grid& grid, HomogeneousRegion region);

enum class Part { Real, Imag };

const char* to_string(Part p);

// --- periodogram ---------------------------------------------------------

class PeriodogramAccumulator {
 public:
  explicit PeriodogramAccumulator(const Grid& grid);
  void add(const Field& u);  // physical or spectral
  void merge(const PeriodogramAccumulator& o);
  StatsTable table() const;
  std::uint64_t count() const { return n_; }

 private:
  Grid grid_;
  std::uint64_t n_ = 0;
  std::vector<double> s1_, s2_;
};

StatsTable periodogram_avg(std::span<const Field> snapshots);

// --- increments ----------------------------------------------------------

// Per-field moment sums of increments u(x+l) - u(x) with both points inside
// the region (no wraparound). Each field is one independent group for the
// standard errors.
class IncrementAccumulator {
 public:
  IncrementAccumulator(const Grid& grid, HomogeneousRegion region, std::vector<std::size_t> lags);
  IncrementAccumulator(const Grid& grid, HomogeneousRegion region);

  void add(const Field& u);
  void merge(const IncrementAccumulator& o);

  // E|d u|^q for q = 1..kMaxOrder
  StatsTable structure_function(int q) const;
  // E(P d u)^3 / [E(P d u)^2]^(3/2)
  StatsTable skewness(Part part) const;
  // E|d u|^4 / [E|d u|^2]^2
  StatsTable flatness() const;
  // real or imaginary part of E[d u |d u|^2]
  StatsTable third_order(Part part) const;

  const std::vector<std::size_t>& lags() const { return lags_; }
  std::uint64_t count() const { return groups_; }

  static constexpr int kMaxOrder = 8;

 private:
  enum Slot {
    kAbs1 = 0,  // |d|^1 .. |d|^8 occupy 0..7
    kRe2 = 8, kRe3, kIm2, kIm3, kThirdRe, kThirdIm, kCount
  };
  template <class F>
  StatsTable ratio_table(const std::string& name, F f) const;
  StatsTable moment_table(const std::string& name, int slot) const;

  Grid grid_;
  HomogeneousRegion region_;
  std::vector<std::size_t> lags_;
  std::vector<std::size_t> slots_;
  std::uint64_t groups_ = 0;
  // per group, per lag: pair count and kCount sums
  std::vector<double> sums_;
  std::vector<std::uint64_t> pairs_;
};

StatsTable structure_function(std::span<const Field> snapshots, int q, HomogeneousRegion region);
StatsTable skewness_curve(std::span<const Field> snapshots, Part part, HomogeneousRegion region);
StatsTable flatness_curve(std::span<const Field> snapshots, HomogeneousRegion region);

// --- gradients -----------------------------------------------------------

// Collects the spectral derivative (multiplier 2 i pi k) restricted to the region.
class GradientAccumulator {
 public:
  GradientAccumulator(const Grid& grid, HomogeneousRegion region);
  void add(const Field& u);
  void merge(const GradientAccumulator& o);

  // Density histogram of the part standardized to unit variance, n_bins
  // uniform bins over [-10, 10].
  StatsTable pdf(Part part, std::size_t n_bins = 201) const;

  struct Moments {
    double skewness, skewness_se;
    double excess_kurtosis, excess_kurtosis_se;
    std::uint64_t n;
  };
  Moments moments(Part part) const;

  std::uint64_t count() const { return fields_; }

 private:
  Grid grid_;
  std::vector<std::size_t> slots_;
  std::vector<double> re_, im_;
  std::uint64_t fields_ = 0;
};

StatsTable gradient_pdf(std::span<const Field> snapshots, Part part, HomogeneousRegion region,
                        std::size_t n_bins = 201);

// --- bump averages -------------------------------------------------------

// E|int g_l(x - y) u(y) dy|^(2q) for a unit-mass Gaussian bump of width l,
// averaged over all positions of a periodic field.
class BumpAccumulator {
 public:
  BumpAccumulator(const Grid& grid, std::vector<double> widths, int q = 1);
  void add(const Field& u);
  StatsTable table() const;

 private:
  Grid grid_;
  std::vector<double> widths_;
  int q_;
  std::vector<double> s1_, s2_;
  std::uint64_t n_ = 0;
};

// --- fits ----------------------------------------------------------------

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;  // of log(estimate) against log(abscissa)
  double r2 = 0.0;
  double slope_se = 0.0;
  std::size_t points = 0;
};

// Least squares of log(estimate) on log(abscissa) over rows with
// lo <= abscissa <= hi. Throws ContractError for nonpositive values or fewer than 3 points.
PowerLawFit fit_power_law(const StatsTable& table, double lo, double hi);

// Default inertial window [max(10 dx, 3/k_nu), L/3].
std::pair<double, double> inertial_window(const Grid& grid, double L, double k_nu);

}  // namespace cspde
