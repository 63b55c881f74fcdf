#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "cspde/errors.hpp"
#include "cspde/oracles.hpp"
#include "cspde/grid.hpp"

using namespace cspde;

namespace {

PhysParams paper() {
  PhysParams p;
  p.H = 1.0 / 3.0;
  p.c = 10.0;
  p.L = 0.1;
  return p;
}

PhysParams desk() {
  PhysParams p;
  p.H = 1.0 / 3.0;
  p.c = 1.0;
  p.L = 1.0;
  p.L_tot = 8.0;
  p.gamma = std::sqrt(0.2);
  return p;
}

// Independent route: adaptive Gauss-Kronrod straight on the defining integrand.
double gk(auto f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("stationary spectrum tails") {
  const PhysParams p = paper();
  const double a = stationary_spectrum(50.0 / p.L, p).value();
  const double b = stationary_spectrum(100.0 / p.L, p).value();
  CHECK(std::log(b / a) / std::log(2.0) == doctest::Approx(-(2 * p.H + 1)).epsilon(1e-3 / (2 * p.H + 1)));
  // far tail equals (1/c) k^-(2H+1) times the spectral moment
  const double I = spectral_moment(p).value();
  CHECK(a == doctest::Approx(I / p.c * std::pow(reg_norm(500.0, p.L), -(2 * p.H + 1))).epsilon(1e-10));
  CHECK(stationary_spectrum(-10.0 / p.L, p).value() <= 1e-12 * stationary_spectrum(1.0 / p.L, p).value());
  const auto r = stationary_spectrum(10.0 / p.L, p);
  CHECK(r.method == OracleMethod::Quadrature);
  CHECK(r.error_estimate < 1e-8 * r.value());
  PhysParams q = p;
  q.H = 0.0;
  CHECK_THROWS_AS(stationary_spectrum(1.0, q), ConfigError);
}

TEST_CASE("stationary spectrum against direct quadrature") {
  const PhysParams p = paper();
  for (double k : {-5.0, 0.0, 3.0, 20.0, 80.0}) {
    auto f = [&](double s) {
      return std::pow(s * s + 1 / (p.L * p.L), p.H + 0.5) * 2 * kPi * p.L * p.L * std::exp(-4 * kPi * kPi * s * s * p.L * p.L);
    };
    const double want = gk(f, -60.0, k) / p.c / std::pow(k * k + 1 / (p.L * p.L), p.H + 0.5);
    CHECK(stationary_spectrum(k, p).value() == doctest::Approx(want).epsilon(1e-9));
  }
  // c < 0 mirrors the spectrum
  PhysParams m = p;
  m.c = -p.c;
  CHECK(stationary_spectrum(-7.0, m).value() == doctest::Approx(stationary_spectrum(7.0, p).value()).epsilon(1e-12));
}

TEST_CASE("stationary spectrum has finite variance on the lattice band") {
  const PhysParams p = paper();
  const Grid g(4096, 1.0);
  double var = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) var += stationary_spectrum(g.k(j), p).value() * g.dk();
  CHECK(std::isfinite(var));
  CHECK(var > 0.0);
  // compare with the continuum variance: tail beyond Nyquist ~ k^-(2H)
  const double tail = spectral_moment(p).value() / p.c * std::pow(g.size() / 2.0, -2 * p.H) / (2 * p.H);
  CHECK(tail < 0.5 * var);
}

TEST_CASE("finite time spectra") {
  const PhysParams p = paper();
  for (double k : {-3.0, 0.0, 17.0}) {
    CHECK(finite_time_spectrum(0.0, k, p).value() == 0.0);
    CHECK(finite_time_spectrum(0.0, k, p, Weighting::Hamiltonian).value() == 0.0);
    CHECK(viscous_spectrum(0.0, k, p).value() == 0.0);
  }
  // viscous form at nu = 0 against the Hamiltonian closed form
  for (double t : {0.05, 0.3, 2.0}) {
    for (double k : {-4.0, 1.0, 9.0, 30.0}) {
      const double a = viscous_spectrum(t, k, p, Weighting::Hamiltonian).value();
      const double b = finite_time_spectrum(t, k, p, Weighting::Hamiltonian).value();
      CHECK(a == doctest::Approx(b).epsilon(1e-10));
      const double fa = viscous_spectrum(t, k, p, Weighting::Fractional).value();
      const double fb = finite_time_spectrum(t, k, p, Weighting::Fractional).value();
      CHECK(fa == doctest::Approx(fb).epsilon(1e-10));
    }
  }
  // viscous damping only lowers the spectrum
  PhysParams v = p;
  v.nu = 1e-5;
  CHECK(viscous_spectrum(5.0, 60.0, v).value() < viscous_spectrum(5.0, 60.0, p).value());
}

TEST_CASE("finite time spectrum converges to the stationary one") {
  const PhysParams p = paper();
  const double k = 5.0 / p.L;
  const double st = stationary_spectrum(k, p).value();
  double prev = std::numeric_limits<double>::infinity();
  for (double t : {1.0, 3.0, 5.0, 6.0, 7.0, 8.0, 10.0, 20.0}) {
    const double err = std::abs(finite_time_spectrum(t, k, p).value() / st - 1.0);
    CHECK(err <= prev + 1e-15);
    prev = err;
  }
  // at t = 100 L/|c| the characteristic has not yet crossed the forcing band
  CHECK(std::abs(finite_time_spectrum(100 * p.L / p.c, k, p).value() / st - 1.0) > 0.5);
  // once k - c t is past the forcing support the two agree
  CHECK(finite_time_spectrum(10.0, k, p).value() == doctest::Approx(st).epsilon(1e-6));
}

TEST_CASE("c_H closed form and definition") {
  const PhysParams p = paper();
  const auto r = c_H(p);
  CHECK(r.value("c_H") == doctest::Approx(r.value("definitional")).epsilon(1e-8));
  CHECK(r.error_estimate < 1e-8 * r.value());
  PhysParams h = p;
  h.H = 0.99;
  const auto r2 = c_H(h);
  CHECK(r2.value("definitional") / r2.value("c_H") == doctest::Approx(1.0).epsilon(1e-6));
  PhysParams c20 = p;
  c20.c = 20.0;
  CHECK(c_H(c20).value() == c_H(p).value() / 2);
  h.H = 0.0;
  CHECK_THROWS_AS(c_H(h), ConfigError);
  h.H = 1.0;
  CHECK_THROWS_AS(c_H(h), ConfigError);
}

TEST_CASE("cosine integral against a direct route") {
  // int_0^inf (1 - cos 2 pi k) k^-(2H+1) dk split at K: numeric head, asymptotic tail
  for (double H : {0.2, 1.0 / 3.0, 0.7}) {
    const double a = 2 * H + 1;
    const double K = 40.0;
    // leading 2 pi^2 k^(2-a) exactly, then the smooth remainder
    double head = 2 * kPi * kPi / (3 - a) + gk(
                                                [&](double k) {
                                                  const double z = 2 * kPi * k;
                                                  if (z < 1e-2)
                                                    return std::pow(2 * kPi, 4) * std::pow(k, 4 - a) * (-1.0 / 24 + z * z / 720);
                                                  return (1 - std::cos(z) - z * z / 2) * std::pow(k, -a);
                                                },
                                                0.0, 1.0);
    for (int n = 1; n < K; ++n)
      head += gk([&](double k) { return (1 - std::cos(2 * kPi * k)) * std::pow(k, -a); }, n, n + 1.0);
    double cos_tail = 0.0;
    {
      // int_K^inf cos(2 pi k) k^-a dk by repeated parts; K integer so sin = 0, cos = 1
      const double w = 2 * kPi;
      cos_tail = a / (w * w) * std::pow(K, -(a + 1)) - a * (a + 1) * (a + 2) / std::pow(w, 4) * std::pow(K, -(a + 3));
    }
    const double tail = std::pow(K, 1 - a) / (a - 1) - cos_tail;
    const auto r = cosine_integral(H);
    CHECK(r.value("quadrature") == doctest::Approx(head + tail).epsilon(1e-7));
    CHECK(r.value("quadrature") == doctest::Approx(r.value("closed_form")).epsilon(1e-10));
  }
}

TEST_CASE("exponents") {
  PhysParams p = paper();
  CHECK(scaling_exponent(ExponentKind::FgfS2, 1, p).value == doctest::Approx(2.0 / 3.0));
  p.gamma = std::sqrt(0.02);
  CHECK(p.intermittency() == doctest::Approx(3.545e-4).epsilon(1e-3));
  CHECK(scaling_exponent(ExponentKind::GmcMoment, 1, p).value == doctest::Approx(0.02 * std::sqrt(kPi) * 0.1 / 10));
  const PhysParams d = desk();
  const auto e = scaling_exponent(ExponentKind::MultifractalS2q, 1, d);
  CHECK(d.intermittency() == doctest::Approx(0.2 * std::sqrt(kPi)));
  CHECK(d.intermittency() == doctest::Approx(0.3545).epsilon(1e-3));
  CHECK(e.valid);
  CHECK(e.value == doctest::Approx(2.0 / 3.0 - 0.2 * std::sqrt(kPi)));
  CHECK(scaling_exponent(ExponentKind::ThirdOrder, 1, d).value == doctest::Approx(1.0 - 0.4 * std::sqrt(kPi)));
  CHECK(scaling_exponent(ExponentKind::FlatnessSlope, 1, d).value == doctest::Approx(-0.4 * std::sqrt(kPi)));
  CHECK_FALSE(scaling_exponent(ExponentKind::MultifractalS2q, 2, d).valid);
  CHECK_FALSE(scaling_exponent(ExponentKind::MultifractalS2q, 2, d).note.empty());
  // concave in q with intermittency, linear without
  for (const PhysParams& q : {paper(), d}) {
    double z[5];
    for (int i = 1; i <= 4; ++i) z[i] = scaling_exponent(ExponentKind::MultifractalS2q, i, q).value;
    for (int i = 2; i <= 3; ++i) {
      const double second = z[i + 1] - 2 * z[i] + z[i - 1];
      if (q.gamma == 0.0) CHECK(std::abs(second) < 1e-15);
      else CHECK(second < 0.0);
    }
  }
  CHECK(parse_exponent_kind("third_order") == ExponentKind::ThirdOrder);
  CHECK_THROWS_AS(parse_exponent_kind("nope"), ConfigError);
}

TEST_CASE("misc constants") {
  PhysParams p = paper();
  p.nu = 1e-9;
  const auto r = misc_constants(p);
  CHECK(r.value("truncation_weight") == doctest::Approx(0.49).epsilon(0.005 / 0.49));
  CHECK(r.value("k_nu") == doctest::Approx(2154.4).epsilon(1e-4));
  const auto s = viscous_s_integral();
  CHECK(s.value("quadrature") == doctest::Approx(s.value("closed_form")).epsilon(1e-10));
  CHECK(s.value("closed_form") == doctest::Approx(0.30028).epsilon(1e-4));
  const double lim = p.forcing_variance() * s.value("closed_form") / (std::cbrt(1e-9) * std::pow(10.0, 2.0 / 3.0));
  CHECK(r.value("viscous_variance_limit") == doctest::Approx(lim));
  // truncation weight against a plain midpoint sum
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = -0.5 + (i + 0.5) / n;
    sum += std::exp(-2 * x * x / (0.25 - x * x)) / n;
  }
  CHECK(truncation_weight(1.0).value() == doctest::Approx(sum).epsilon(1e-9));
  CHECK(truncation_weight(1.0).error_estimate < 1e-10);
}

TEST_CASE("fgf statics") {
  const PhysParams p = paper();
  const auto r = fgf_statics(1.0 / 3.0, p);
  CHECK(r.error_estimate < 1e-8 * r.value("variance"));
  CHECK(r.value("variance") == doctest::Approx(r.value("variance_closed_form")).epsilon(1e-10));
  CHECK(r.value("increment_prefactor") == doctest::Approx(r.value("increment_prefactor_gamma")).epsilon(1e-6));
  // the small-scale prefactor of the static field is c_H with C_f(0) in place of the spectral moment
  const auto ch = c_H(p);
  CHECK(r.value("increment_prefactor") * ch.value("spectral_moment") ==
        doctest::Approx(ch.value() * p.forcing_variance()).epsilon(1e-6));
  const auto z = fgf_statics(0.0, p);
  CHECK(z.warning);
  CHECK(z.value("log_slope") == doctest::Approx(0.017725).epsilon(1e-4));
  CHECK_THROWS_AS(z.value("variance"), ContractError);
  CHECK_THROWS_AS(fgf_statics(1.0, p), ConfigError);
}

TEST_CASE("oracle lookup by name") {
  const PhysParams p = paper();
  CHECK(oracle_by_name("stationary_spectrum", p, {1.0, 2.0}, 0.0).size() == 2);
  CHECK(oracle_by_name("truncation_weight", p, {}, 0.0).front().value() == doctest::Approx(0.4917).epsilon(1e-3));
  CHECK(oracle_by_name("exponents", p, {}, 0.0).size() == 11);
  CHECK_THROWS_AS(oracle_by_name("nothing", p, {}, 0.0), ConfigError);
}

}
