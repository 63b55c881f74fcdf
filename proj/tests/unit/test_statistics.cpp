#include <doctest.h>

#include <cmath>
#include <vector>

#include "cspde/errors.hpp"
#include "cspde/oracles.hpp"
#include "cspde/statistics.hpp"
#include "cspde/synthesis.hpp"
#include "helpers.hpp"

using namespace cspde;
using namespace testing;

namespace {

PhysParams desk() {
  PhysParams p;
  p.H = 1.0 / 3.0;
  p.c = 1.0;
  p.L = 1.0;
  p.L_tot = 8.0;
  return p;
}

StatsTable series(const std::vector<double>& x, auto f) {
  StatsTable t;
  for (double v : x) {
    t.abscissa.push_back(v);
    t.estimate.push_back(f(v));
    t.std_error.push_back(0.0);
    t.n_samples.push_back(1);
  }
  return t;
}

Field rotate(const Field& u, double theta) {
  auto v = u.data();
  for (auto& z : v) z *= std::polar(1.0, theta);
  return Field(u.grid(), u.space(), v);
}

}  // namespace

TEST_SUITE("statistics") {

TEST_CASE("region and scales") {
  const Grid g(1024, 1.0);
  const auto r = region_slots(g, HomogeneousRegion{0.2});
  for (auto j : r) CHECK(std::abs(g.x(j)) < 0.2);
  CHECK(r.size() == 409);
  CHECK_THROWS_AS(region_slots(g, HomogeneousRegion{0.6}), ContractError);
  CHECK_THROWS_AS(region_slots(g, HomogeneousRegion{0.0}), ContractError);
  const auto s = scale_set(1000);
  CHECK(s.front() == 1);
  CHECK(s.back() == 1000);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
  CHECK(s.size() > 50);
  CHECK(s.size() < 80);
  CHECK_THROWS_AS(IncrementAccumulator(g, HomogeneousRegion{0.2}, {500}), ContractError);
}

TEST_CASE("periodogram of a single mode") {
  const Grid g(64, 2.0);
  const Field u = mode(g, 3);
  const Field arr[] = {u, u};
  const auto t = periodogram_avg(arr);
  for (std::size_t j = 0; j < 64; ++j) {
    if (j == g.slot(3)) CHECK(t.estimate[j] == doctest::Approx(2.0).epsilon(1e-12));
    else CHECK(std::abs(t.estimate[j]) < 1e-24);
    CHECK(t.std_error[j] < 1e-12);
  }
  CHECK(t.n_fields == 2);
  CHECK(t.abscissa_name == "k");
}

TEST_CASE("periodogram of the white surrogate and fgf") {
  const PhysParams p = desk();
  const Grid g(4096, p.L_tot);
  NoiseStream s(1, 0);
  PeriodogramAccumulator white(g), fgf(g);
  for (int d = 0; d < 200; ++d) {
    white.add(sample_white_surrogate(g, p, s));
    fgf.add(synth_fgf(p.H, g, p, s).values);
  }
  const auto w = white.table();
  const double level = std::sqrt(kPi) * p.L / (2 * std::abs(p.c));
  double mean = 0;
  for (double v : w.estimate) mean += v / w.rows();
  double se = 0;
  for (double v : w.std_error) se += v * v;
  se = std::sqrt(se) / w.rows();
  CHECK(std::abs(mean - level) < 4 * se);
  int outside = 0;
  for (std::size_t j = 0; j < w.rows(); ++j)
    if (std::abs(w.estimate[j] - level) > 4 * w.std_error[j]) ++outside;
  CHECK(outside < 0.01 * w.rows());
  const auto f = fgf.table();
  const auto fit = fit_power_law(f, 5.0 / p.L, g.size() * g.dk() / 8);
  CHECK(fit.slope == doctest::Approx(-5.0 / 3.0).epsilon(0.05 / (5.0 / 3.0)));
}

TEST_CASE("increments of a single mode") {
  const Grid g(512, 1.0);
  const std::int64_t k0 = 5;
  const Field u = mode(g, k0);
  const Field arr[] = {u};
  const auto t = structure_function(arr, 2, HomogeneousRegion{0.2});
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const double l = t.abscissa[i];
    CHECK(t.estimate[i] == doctest::Approx(std::norm(std::polar(1.0, 2 * kPi * k0 * l) - 1.0)).epsilon(1e-12));
  }
  CHECK(t.estimator == "structure_function_q2");
}

TEST_CASE("gaussian baselines") {
  const Grid g(2048, 1.0);
  const PhysParams p = [] {
    PhysParams q;
    return q;
  }();
  NoiseStream s(2, 0);
  IncrementAccumulator inc(g, HomogeneousRegion{0.2});
  GradientAccumulator grad(g, HomogeneousRegion{0.2});
  for (int d = 0; d < 300; ++d) {
    const Field w = sample_white_surrogate(g, p, s);
    inc.add(w);
    grad.add(synth_fgf(p.H, g, p, s).values);
  }
  const auto fl = inc.flatness();
  for (std::size_t i = 0; i < fl.rows(); ++i) CHECK(std::abs(fl.estimate[i] - 2.0) < 4 * fl.std_error[i]);
  for (Part part : {Part::Real, Part::Imag}) {
    const auto sk = inc.skewness(part);
    for (std::size_t i = 0; i < sk.rows(); ++i) CHECK(std::abs(sk.estimate[i]) < 0.05);
    const auto m = grad.moments(part);
    CHECK(std::abs(m.excess_kurtosis) < 0.1);
    CHECK(std::abs(m.skewness) < 0.1);
    CHECK(m.n == 300 * region_slots(g, HomogeneousRegion{0.2}).size());
  }
  const auto pdf = grad.pdf(Part::Real);
  CHECK(pdf.rows() == 201);
  double mass = 0;
  for (std::size_t i = 0; i < pdf.rows(); ++i) mass += pdf.estimate[i] * (pdf.abscissa[1] - pdf.abscissa[0]);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pdf.estimate[100] == doctest::Approx(1.0 / std::sqrt(2 * kPi)).epsilon(0.05));
}

TEST_CASE("phase and translation invariance") {
  const Grid g(1024, 1.0);
  const Field u = random_field(g, Space::Physical, 3);
  const Field r = rotate(u, 0.7);
  IncrementAccumulator a(g, HomogeneousRegion{0.2}), b(g, HomogeneousRegion{0.2});
  a.add(u);
  b.add(r);
  for (int q : {1, 2, 4}) {
    const auto ta = a.structure_function(q), tb = b.structure_function(q);
    for (std::size_t i = 0; i < ta.rows(); ++i) CHECK(ta.estimate[i] == doctest::Approx(tb.estimate[i]).epsilon(1e-12));
  }
  const auto fa = a.flatness(), fb = b.flatness();
  for (std::size_t i = 0; i < fa.rows(); ++i) CHECK(fa.estimate[i] == doctest::Approx(fb.estimate[i]).epsilon(1e-12));
  const Field ua[] = {u};
  const Field ra[] = {r};
  auto shifted = u.data();
  std::rotate(shifted.begin(), shifted.begin() + 37, shifted.end());
  const Field sa[] = {Field(g, Space::Physical, shifted)};
  const auto pu = periodogram_avg(ua), pr = periodogram_avg(ra), ps = periodogram_avg(sa);
  for (std::size_t j = 0; j < pu.rows(); ++j) {
    CHECK(pr.estimate[j] == doctest::Approx(pu.estimate[j]).epsilon(1e-12));
    CHECK(ps.estimate[j] == doctest::Approx(pu.estimate[j]).epsilon(1e-12));
  }
}

TEST_CASE("standard errors shrink like one over root n") {
  const Grid g(256, 1.0);
  const PhysParams p;
  NoiseStream s(4, 0);
  PeriodogramAccumulator acc(g);
  std::vector<double> xs, ys;
  int n = 0;
  for (int target : {50, 100, 200, 400, 800, 1600}) {
    while (n < target) acc.add(sample_white_surrogate(g, p, s)), ++n;
    const auto t = acc.table();
    double se = 0;
    for (double v : t.std_error) se += v / t.rows();
    xs.push_back(std::log(n));
    ys.push_back(std::log(se));
  }
  const double m = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sx += xs[i], sy += ys[i], sxx += xs[i] * xs[i], sxy += xs[i] * ys[i];
  CHECK((m * sxy - sx * sy) / (m * sxx - sx * sx) == doctest::Approx(-0.5).epsilon(0.1));
}

TEST_CASE("region restriction leaves slopes unchanged") {
  const PhysParams p = desk();
  const Grid g(8192, p.L_tot);
  NoiseStream s(5, 0);
  IncrementAccumulator narrow(g, HomogeneousRegion{0.2}, scale_set(200)), wide(g, HomogeneousRegion{0.45}, scale_set(200));
  for (int d = 0; d < 60; ++d) {
    const Field f = synth_fgf(p.H, g, p, s).values;
    narrow.add(f);
    wide.add(f);
  }
  const auto a = fit_power_law(narrow.structure_function(2), 4 * g.dx(), p.L / 4);
  const auto b = fit_power_law(wide.structure_function(2), 4 * g.dx(), p.L / 4);
  CHECK(std::abs(a.slope - b.slope) < std::max(a.slope_se, b.slope_se) + 0.01);
}

TEST_CASE("merging partial sums") {
  const Grid g(512, 1.0);
  const PhysParams p;
  std::vector<Field> fields;
  NoiseStream s(6, 0);
  for (int d = 0; d < 6; ++d) fields.push_back(synth_fgf(p.H, g, p, s).values);
  IncrementAccumulator all(g, HomogeneousRegion{0.2}), x(g, HomogeneousRegion{0.2}), y(g, HomogeneousRegion{0.2});
  PeriodogramAccumulator pa(g), px(g), py(g);
  GradientAccumulator ga(g, HomogeneousRegion{0.2}), gx(g, HomogeneousRegion{0.2}), gy(g, HomogeneousRegion{0.2});
  for (int d = 0; d < 6; ++d) {
    all.add(fields[d]);
    pa.add(fields[d]);
    ga.add(fields[d]);
    (d < 2 ? x : y).add(fields[d]);
    (d < 2 ? px : py).add(fields[d]);
    (d < 2 ? gx : gy).add(fields[d]);
  }
  x.merge(y);
  px.merge(py);
  gx.merge(gy);
  const auto a = all.flatness(), b = x.flatness();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    CHECK(a.estimate[i] == doctest::Approx(b.estimate[i]).epsilon(1e-12));
    CHECK(a.std_error[i] == doctest::Approx(b.std_error[i]).epsilon(1e-9));
  }
  const auto ta = pa.table(), tb = px.table();
  for (std::size_t j = 0; j < ta.rows(); ++j) CHECK(ta.estimate[j] == doctest::Approx(tb.estimate[j]).epsilon(1e-12));
  CHECK(ga.moments(Part::Real).excess_kurtosis ==
        doctest::Approx(gx.moments(Part::Real).excess_kurtosis).epsilon(1e-10));
}

TEST_CASE("bump averages") {
  const Grid g(512, 4.0);
  const Field one(g, Space::Physical, std::vector<Complex>(512, 1.0));
  BumpAccumulator b(g, {0.05, 0.2, 1.0}, 2);
  b.add(one);
  const auto t = b.table();
  for (double v : t.estimate) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  // a single mode is damped by the Gaussian symbol
  BumpAccumulator m(g, {0.3}, 1);
  m.add(mode(g, 2));
  const double k = 2 * g.dk();
  CHECK(m.table().estimate[0] == doctest::Approx(std::exp(-4 * kPi * kPi * k * k * 0.09)).epsilon(1e-12));
}

TEST_CASE("power law fits") {
  std::vector<double> x;
  for (int i = 0; i < 30; ++i) x.push_back(std::pow(10.0, -3 + i * 0.1));
  auto f1 = fit_power_law(series(x, [](double l) { return std::pow(l, 0.66); }), 0, 1);
  CHECK(std::abs(f1.slope - 0.66) < 1e-12);
  CHECK(f1.r2 == doctest::Approx(1.0));
  auto f2 = fit_power_law(series(x, [](double) { return 7.0; }), 0, 1);
  CHECK(std::abs(f2.slope) < 1e-12);
  auto f3 = fit_power_law(series(x, [](double l) { return std::pow(l, 2.0 / 3) * (1 + 0.01 * std::sin(std::log(l))); }), 0, 1);
  CHECK(std::abs(f3.slope - 2.0 / 3) < 0.01);
  CHECK(f1.points == 30);
  CHECK_THROWS_AS(fit_power_law(series(x, [](double l) { return l - 0.01; }), 0, 1), ContractError);
  CHECK_THROWS_AS(fit_power_law(series(x, [](double l) { return l; }), 0.5, 0.6), ContractError);
  const auto w = inertial_window(Grid(4096, 1.0), 0.1, 100.0);
  CHECK(w.first == doctest::Approx(0.03));
  CHECK(w.second == doctest::Approx(0.1 / 3));
}

}
