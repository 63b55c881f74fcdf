#include "cspde/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cspde {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Complex> physical_values(const Field& u) {
  if (u.space() == Space::Physical) return u.data();
  return inverse_transform(u).data();
}

std::vector<Complex> spectral_values(const Field& u) {
  if (u.space() == Space::Spectral) return u.data();
  return forward_transform(u).data();
}

void require_grid(const Grid& expected, const Field& u, const char* op) {
  if (!(u.grid() == expected)) throw ContractError(std::string(op) + ": snapshot grid mismatch");
}

double mean_se(double s1, double s2, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double m = s1 / static_cast<double>(n);
  const double var = std::max(0.0, (s2 - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
  return std::sqrt(var / static_cast<double>(n));
}

}  // namespace

const char* to_string(Part p) { return p == Part::Real ? "real" : "imag"; }

std::vector<std::size_t> region_slots(const Grid& grid, HomogeneousRegion region) {
  if (!(region.fraction > 0.0) || region.fraction > 0.5) throw ContractError("region fraction must lie in (0, 0.5]");
  std::vector<std::size_t> out;
  const double lim = region.fraction * grid.period();
  for (std::size_t j = 0; j < grid.size(); ++j)
    if (std::abs(grid.x(j)) < lim) out.push_back(j);
  if (out.empty()) throw ContractError("empty homogeneous region");
  return out;
}

std::vector<std::size_t> scale_set(std::size_t max_lag, double per_decade) {
  std::vector<std::size_t> out;
  if (max_lag == 0) return out;
  for (int i = 0;; ++i) {
    const double v = std::pow(10.0, i / per_decade);
    const auto m = static_cast<std::size_t>(std::llround(v));
    if (m > max_lag) break;
    if (out.empty() || out.back() != m) out.push_back(m);
  }
  return out;
}

std::vector<std::size_t> default_scales(const Grid& grid, HomogeneousRegion region) {
  return scale_set(region_slots(grid, region).size() / 2);
}

// --- periodogram ---------------------------------------------------------

PeriodogramAccumulator::PeriodogramAccumulator(const Grid& grid)
    : grid_(grid), s1_(grid.size(), 0.0), s2_(grid.size(), 0.0) {}

void PeriodogramAccumulator::add(const Field& u) {
  require_grid(grid_, u, "periodogram_avg");
  const auto v = spectral_values(u);
  const double inv = 1.0 / grid_.period();
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double p = std::norm(v[j]) * inv;
    s1_[j] += p;
    s2_[j] += p * p;
  }
  ++n_;
}

void PeriodogramAccumulator::merge(const PeriodogramAccumulator& o) {
  if (!(o.grid_ == grid_)) throw ContractError("periodogram merge: grid mismatch");
  for (std::size_t j = 0; j < s1_.size(); ++j) {
    s1_[j] += o.s1_[j];
    s2_[j] += o.s2_[j];
  }
  n_ += o.n_;
}

StatsTable PeriodogramAccumulator::table() const {
  if (n_ == 0) throw ContractError("periodogram_avg: no snapshots");
  StatsTable t;
  t.estimator = "periodogram";
  t.abscissa_name = "k";
  t.n_fields = n_;
  for (std::size_t j = 0; j < s1_.size(); ++j) {
    t.abscissa.push_back(grid_.k(j));
    t.estimate.push_back(s1_[j] / static_cast<double>(n_));
    t.std_error.push_back(mean_se(s1_[j], s2_[j], n_));
    t.n_samples.push_back(n_);
  }
  return t;
}

StatsTable periodogram_avg(std::span<const Field> snapshots) {
  if (snapshots.empty()) throw ContractError("periodogram_avg: no snapshots");
  PeriodogramAccumulator acc(snapshots.front().grid());
  for (const auto& s : snapshots) acc.add(s);
  return acc.table();
}

// --- increments ----------------------------------------------------------

IncrementAccumulator::IncrementAccumulator(const Grid& grid, HomogeneousRegion region, std::vector<std::size_t> lags)
    : grid_(grid), region_(region), lags_(std::move(lags)), slots_(region_slots(grid, region)) {
  for (auto m : lags_)
    if (m == 0 || m >= slots_.size())
      throw ContractError("increment scale of " + std::to_string(m) + " sites exceeds the region (" +
                          std::to_string(slots_.size()) + " sites)");
}

IncrementAccumulator::IncrementAccumulator(const Grid& grid, HomogeneousRegion region)
    : IncrementAccumulator(grid, region, default_scales(grid, region)) {}

void IncrementAccumulator::add(const Field& field) {
  require_grid(grid_, field, "increments");
  const auto u = physical_values(field);
  const std::size_t first = slots_.front();
  const std::size_t last = slots_.back();
  const std::size_t base = sums_.size();
  sums_.resize(base + lags_.size() * kCount, 0.0);
  pairs_.resize(pairs_.size() + lags_.size(), 0);
  for (std::size_t li = 0; li < lags_.size(); ++li) {
    const std::size_t m = lags_[li];
    double s[kCount] = {};
    std::uint64_t count = 0;
    for (std::size_t j = first; j + m <= last; ++j) {
      const Complex d = u[j + m] - u[j];
      const double a2 = std::norm(d);
      const double a = std::sqrt(a2);
      double pw = a;
      for (int p = 0; p < kMaxOrder; ++p) {
        s[p] += pw;
        pw *= a;
      }
      const double re = d.real(), im = d.imag();
      s[kRe2] += re * re;
      s[kRe3] += re * re * re;
      s[kIm2] += im * im;
      s[kIm3] += im * im * im;
      s[kThirdRe] += re * a2;
      s[kThirdIm] += im * a2;
      ++count;
    }
    std::copy(s, s + kCount, sums_.begin() + static_cast<std::ptrdiff_t>(base + li * kCount));
    pairs_[pairs_.size() - lags_.size() + li] = count;
  }
  ++groups_;
}

void IncrementAccumulator::merge(const IncrementAccumulator& o) {
  if (!(o.grid_ == grid_) || o.lags_ != lags_ || o.slots_ != slots_)
    throw ContractError("increment merge: incompatible accumulators");
  sums_.insert(sums_.end(), o.sums_.begin(), o.sums_.end());
  pairs_.insert(pairs_.end(), o.pairs_.begin(), o.pairs_.end());
  groups_ += o.groups_;
}

StatsTable IncrementAccumulator::moment_table(const std::string& name, int slot) const {
  if (groups_ == 0) throw ContractError("increments: no snapshots");
  StatsTable t;
  t.estimator = name;
  t.abscissa_name = "ell";
  t.n_fields = groups_;
  const std::size_t L = lags_.size();
  for (std::size_t li = 0; li < L; ++li) {
    double tot = 0.0, s1 = 0.0, s2 = 0.0;
    std::uint64_t np = 0;
    for (std::uint64_t g = 0; g < groups_; ++g) {
      const double v = sums_[(g * L + li) * kCount + static_cast<std::size_t>(slot)];
      const auto c = pairs_[g * L + li];
      tot += v;
      np += c;
      const double x = v / static_cast<double>(c);
      s1 += x;
      s2 += x * x;
    }
    const double est = tot / static_cast<double>(np);
    double se = mean_se(s1, s2, groups_);
    if (groups_ == 1 && slot < kMaxOrder / 2) {
      // within-field spread, ignores spatial correlation
      const double sq = sums_[li * kCount + static_cast<std::size_t>(2 * slot + 1)] / static_cast<double>(np);
      se = std::sqrt(std::max(0.0, sq - est * est) / static_cast<double>(np));
    }
    t.abscissa.push_back(static_cast<double>(lags_[li]) * grid_.dx());
    t.estimate.push_back(est);
    t.std_error.push_back(se);
    t.n_samples.push_back(np);
  }
  return t;
}

StatsTable IncrementAccumulator::structure_function(int q) const {
  if (q < 1 || q > kMaxOrder) throw ContractError("structure function order must lie in 1..8");
  return moment_table("structure_function_q" + std::to_string(q), q - 1);
}

template <class F>
StatsTable IncrementAccumulator::ratio_table(const std::string& name, F f) const {
  if (groups_ == 0) throw ContractError("increments: no snapshots");
  StatsTable t;
  t.estimator = name;
  t.abscissa_name = "ell";
  t.n_fields = groups_;
  const std::size_t L = lags_.size();
  std::vector<double> tot(kCount);
  std::vector<double> loo(kCount);
  for (std::size_t li = 0; li < L; ++li) {
    std::fill(tot.begin(), tot.end(), 0.0);
    std::uint64_t np = 0;
    for (std::uint64_t g = 0; g < groups_; ++g) {
      for (int s = 0; s < kCount; ++s) tot[static_cast<std::size_t>(s)] += sums_[(g * L + li) * kCount + static_cast<std::size_t>(s)];
      np += pairs_[g * L + li];
    }
    const double est = f(tot.data(), static_cast<double>(np));
    double se = 0.0;
    if (groups_ >= 2 && std::isfinite(est)) {
      // leave-one-field-out jackknife
      double a1 = 0.0, a2 = 0.0;
      for (std::uint64_t g = 0; g < groups_; ++g) {
        for (int s = 0; s < kCount; ++s)
          loo[static_cast<std::size_t>(s)] =
              tot[static_cast<std::size_t>(s)] - sums_[(g * L + li) * kCount + static_cast<std::size_t>(s)];
        const double v = f(loo.data(), static_cast<double>(np - pairs_[g * L + li]));
        a1 += v;
        a2 += v * v;
      }
      const double G = static_cast<double>(groups_);
      const double m = a1 / G;
      se = std::sqrt(std::max(0.0, (G - 1.0) / G * (a2 - G * m * m)));
    }
    t.abscissa.push_back(static_cast<double>(lags_[li]) * grid_.dx());
    t.estimate.push_back(est);
    t.std_error.push_back(se);
    t.n_samples.push_back(np);
  }
  return t;
}

StatsTable IncrementAccumulator::skewness(Part part) const {
  const int i2 = part == Part::Real ? kRe2 : kIm2;
  const int i3 = part == Part::Real ? kRe3 : kIm3;
  return ratio_table(std::string("skewness_") + to_string(part), [=](const double* s, double n) {
    const double m2 = s[i2] / n, m3 = s[i3] / n;
    return m2 > 0.0 ? m3 / std::pow(m2, 1.5) : kNaN;
  });
}

StatsTable IncrementAccumulator::flatness() const {
  return ratio_table("flatness", [](const double* s, double n) {
    const double m2 = s[1] / n, m4 = s[3] / n;
    return m2 > 0.0 ? m4 / (m2 * m2) : kNaN;
  });
}

StatsTable IncrementAccumulator::third_order(Part part) const {
  return moment_table(std::string("third_order_") + to_string(part), part == Part::Real ? kThirdRe : kThirdIm);
}

StatsTable structure_function(std::span<const Field> snapshots, int q, HomogeneousRegion region) {
  if (snapshots.empty()) throw ContractError("structure_function: no snapshots");
  IncrementAccumulator acc(snapshots.front().grid(), region);
  for (const auto& s : snapshots) acc.add(s);
  return acc.structure_function(q);
}

StatsTable skewness_curve(std::span<const Field> snapshots, Part part, HomogeneousRegion region) {
  if (snapshots.empty()) throw ContractError("skewness_curve: no snapshots");
  IncrementAccumulator acc(snapshots.front().grid(), region);
  for (const auto& s : snapshots) acc.add(s);
  return acc.skewness(part);
}

StatsTable flatness_curve(std::span<const Field> snapshots, HomogeneousRegion region) {
  if (snapshots.empty()) throw ContractError("flatness_curve: no snapshots");
  IncrementAccumulator acc(snapshots.front().grid(), region);
  for (const auto& s : snapshots) acc.add(s);
  return acc.flatness();
}

// --- gradients -----------------------------------------------------------

GradientAccumulator::GradientAccumulator(const Grid& grid, HomogeneousRegion region)
    : grid_(grid), slots_(region_slots(grid, region)) {}

void GradientAccumulator::add(const Field& u) {
  require_grid(grid_, u, "gradient_pdf");
  auto v = spectral_values(u);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] *= Complex(0.0, 2.0 * kPi * grid_.k(j));
  lattice_inverse(grid_.size(), grid_.dk(), v.data(), v.data());
  for (auto j : slots_) {
    re_.push_back(v[j].real());
    im_.push_back(v[j].imag());
  }
  ++fields_;
}

void GradientAccumulator::merge(const GradientAccumulator& o) {
  if (!(o.grid_ == grid_) || o.slots_ != slots_) throw ContractError("gradient merge: incompatible accumulators");
  re_.insert(re_.end(), o.re_.begin(), o.re_.end());
  im_.insert(im_.end(), o.im_.begin(), o.im_.end());
  fields_ += o.fields_;
}

StatsTable GradientAccumulator::pdf(Part part, std::size_t n_bins) const {
  const auto& v = part == Part::Real ? re_ : im_;
  if (v.empty()) throw ContractError("gradient_pdf: no samples");
  if (n_bins == 0) throw ContractError("gradient_pdf: need at least one bin");
  double s1 = 0.0, s2 = 0.0;
  for (double x : v) s1 += x;
  const double n = static_cast<double>(v.size());
  const double mean = s1 / n;
  for (double x : v) s2 += (x - mean) * (x - mean);
  const double sd = std::sqrt(s2 / n);
  if (!(sd > 0.0)) throw ContractError("gradient_pdf: zero variance");
  const double lo = -10.0, width = 20.0 / static_cast<double>(n_bins);
  std::vector<std::uint64_t> counts(n_bins, 0);
  for (double x : v) {
    const double z = (x - mean) / sd;
    const double b = std::floor((z - lo) / width);
    if (b >= 0.0 && b < static_cast<double>(n_bins)) ++counts[static_cast<std::size_t>(b)];
  }
  StatsTable t;
  t.estimator = std::string("gradient_pdf_") + to_string(part);
  t.abscissa_name = "z";
  t.n_fields = fields_;
  for (std::size_t b = 0; b < n_bins; ++b) {
    t.abscissa.push_back(lo + (static_cast<double>(b) + 0.5) * width);
    const double c = static_cast<double>(counts[b]);
    t.estimate.push_back(c / (n * width));
    t.std_error.push_back(std::sqrt(c) / (n * width));
    t.n_samples.push_back(v.size());
  }
  return t;
}

GradientAccumulator::Moments GradientAccumulator::moments(Part part) const {
  const auto& v = part == Part::Real ? re_ : im_;
  if (v.empty()) throw ContractError("gradient moments: no samples");
  const std::size_t per = slots_.size();
  const std::size_t G = v.size() / per;
  std::vector<std::array<double, 4>> sums(G, {0.0, 0.0, 0.0, 0.0});
  std::array<double, 4> tot{0.0, 0.0, 0.0, 0.0};
  for (std::size_t g = 0; g < G; ++g) {
    for (std::size_t i = 0; i < per; ++i) {
      const double x = v[g * per + i];
      sums[g][0] += x;
      sums[g][1] += x * x;
      sums[g][2] += x * x * x;
      sums[g][3] += x * x * x * x;
    }
    for (int p = 0; p < 4; ++p) tot[static_cast<std::size_t>(p)] += sums[g][static_cast<std::size_t>(p)];
  }
  auto stats = [](const std::array<double, 4>& s, double n) {
    const double mu = s[0] / n;
    const double e2 = s[1] / n, e3 = s[2] / n, e4 = s[3] / n;
    const double m2 = e2 - mu * mu;
    const double m3 = e3 - 3.0 * mu * e2 + 2.0 * mu * mu * mu;
    const double m4 = e4 - 4.0 * mu * e3 + 6.0 * mu * mu * e2 - 3.0 * mu * mu * mu * mu;
    return std::pair<double, double>(m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0);
  };
  const double n = static_cast<double>(v.size());
  Moments m{};
  std::tie(m.skewness, m.excess_kurtosis) = stats(tot, n);
  m.n = v.size();
  if (G >= 2) {
    double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
    for (std::size_t g = 0; g < G; ++g) {
      std::array<double, 4> loo;
      for (int p = 0; p < 4; ++p) loo[static_cast<std::size_t>(p)] = tot[static_cast<std::size_t>(p)] - sums[g][static_cast<std::size_t>(p)];
      auto [s, k] = stats(loo, n - static_cast<double>(per));
      a1 += s;
      a2 += s * s;
      b1 += k;
      b2 += k * k;
    }
    const double Gd = static_cast<double>(G);
    m.skewness_se = std::sqrt(std::max(0.0, (Gd - 1.0) / Gd * (a2 - a1 * a1 / Gd)));
    m.excess_kurtosis_se = std::sqrt(std::max(0.0, (Gd - 1.0) / Gd * (b2 - b1 * b1 / Gd)));
  } else {
    m.skewness_se = std::sqrt(6.0 / n);
    m.excess_kurtosis_se = std::sqrt(24.0 / n);
  }
  return m;
}

StatsTable gradient_pdf(std::span<const Field> snapshots, Part part, HomogeneousRegion region, std::size_t n_bins) {
  if (snapshots.empty()) throw ContractError("gradient_pdf: no snapshots");
  GradientAccumulator acc(snapshots.front().grid(), region);
  for (const auto& s : snapshots) acc.add(s);
  return acc.pdf(part, n_bins);
}

// --- bump averages -------------------------------------------------------

BumpAccumulator::BumpAccumulator(const Grid& grid, std::vector<double> widths, int q)
    : grid_(grid), widths_(std::move(widths)), q_(q), s1_(widths_.size(), 0.0), s2_(widths_.size(), 0.0) {
  if (q < 1) throw ContractError("bump moment order must be >= 1");
}

void BumpAccumulator::add(const Field& u) {
  require_grid(grid_, u, "bump average");
  const auto spec = spectral_values(u);
  std::vector<Complex> v(spec.size());
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    const double l = widths_[i];
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double k = grid_.k(j);
      v[j] = spec[j] * std::exp(-2.0 * kPi * kPi * k * k * l * l);
    }
    lattice_inverse(grid_.size(), grid_.dk(), v.data(), v.data());
    double s = 0.0;
    for (const auto& z : v) s += std::pow(std::norm(z), q_);
    s /= static_cast<double>(v.size());
    s1_[i] += s;
    s2_[i] += s * s;
  }
  ++n_;
}

StatsTable BumpAccumulator::table() const {
  if (n_ == 0) throw ContractError("bump average: no fields");
  StatsTable t;
  t.estimator = "bump_moment";
  t.abscissa_name = "ell";
  t.n_fields = n_;
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    t.abscissa.push_back(widths_[i]);
    t.estimate.push_back(s1_[i] / static_cast<double>(n_));
    t.std_error.push_back(mean_se(s1_[i], s2_[i], n_));
    t.n_samples.push_back(n_);
  }
  return t;
}

// --- fits ----------------------------------------------------------------

PowerLawFit fit_power_law(const StatsTable& table, double lo, double hi) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const double x = table.abscissa[i];
    if (x < lo || x > hi) continue;
    const double y = table.estimate[i];
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(y))
      throw ContractError("fit_power_law: nonpositive value in the fit window");
    xs.push_back(std::log(x));
    ys.push_back(std::log(y));
  }
  if (xs.size() < 3) throw ContractError("fit_power_law: fewer than 3 points in the fit window");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  PowerLawFit f;
  f.points = xs.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  const double sse = std::max(0.0, syy - f.slope * sxy);
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  f.slope_se = xs.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
  return f;
}

std::pair<double, double> inertial_window(const Grid& grid, double L, double k_nu) {
  return {std::max(10.0 * grid.dx(), 3.0 / k_nu), L / 3.0};
}

}  // namespace cspde
