#include <doctest.h>

#include "cspde/errors.hpp"
#include "cspde/operators.hpp"
#include "helpers.hpp"

using namespace cspde;
using namespace testing;

namespace {

PhysParams params() {
  PhysParams p;
  p.H = 1.0 / 3.0;
  p.L = 0.1;
  p.c = 10.0;
  return p;
}

// Band-limited random spectrum: |m| <= band.
Field band_limited(const Grid& g, std::int64_t band, std::uint64_t seed) {
  auto v = random_values(g.size(), seed);
  for (std::size_t j = 0; j < g.size(); ++j)
    if (std::abs(g.index(j)) > band) v[j] = 0.0;
  return Field(g, Space::Spectral, v);
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("regularized norm") {
  CHECK(reg_norm(0.0, 0.1) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(std::abs(reg_norm(10.0, 1e9) - 10.0) < 1e-15);
  CHECK(reg_norm(3.0, 0.25) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("multiplier symbols") {
  const PhysParams p = params();
  CHECK(multiplier(MultiplierKind::PH, 0.0, p).real() == doctest::Approx(std::pow(0.1, 5.0 / 6.0)).epsilon(1e-14));
  CHECK(multiplier(MultiplierKind::PH, 0.0, p).real() == doctest::Approx(0.146780).epsilon(1e-5));
  CHECK(multiplier(MultiplierKind::P0Tilde, 0.0, p) == Complex(0.0));
  const Grid g(256, 1.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double k = g.k(j);
    const Complex ph = multiplier(MultiplierKind::PH, k, p);
    CHECK(std::abs(ph * multiplier(MultiplierKind::PHInv, k, p) - 1.0) <= 1e-15);
    CHECK(ph.imag() == 0.0);
    CHECK(ph.real() > 0.0);
    CHECK(ph == multiplier(MultiplierKind::PH, -k, p));
    const Complex p0 = multiplier(MultiplierKind::P0Tilde, k, p);
    CHECK(p0.real() == 0.0);
    CHECK(p0 == -multiplier(MultiplierKind::P0Tilde, -k, p));
    CHECK(multiplier(MultiplierKind::Laplacian, k, p).real() ==
          doctest::Approx(-4.0 * kPi * kPi * k * k).epsilon(1e-15));
  }
}

TEST_CASE("multiplier composition and parity") {
  const PhysParams p = params();
  const Grid g(512, 1.0);
  const Field u = random_field(g, Space::Spectral, 11);
  const Field back = apply_multiplier(apply_multiplier(u, MultiplierKind::PH, p), MultiplierKind::PHInv, p);
  CHECK(max_diff(back.values(), u.values()) <= 1e-12 * max_abs(u.values()));

  // real even physical field -> real even spectrum -> odd imaginary after P0~
  std::vector<Complex> x(512);
  for (std::size_t j = 0; j < 512; ++j) x[j] = std::exp(-g.x(j) * g.x(j) / 0.01);
  const Field r = apply_multiplier(forward_transform(Field(g, Space::Physical, x)), MultiplierKind::P0Tilde, p);
  for (std::int64_t m = -255; m <= 255; ++m) {
    CHECK(std::abs(r[g.slot(m)].real()) <= 1e-15);
    CHECK(std::abs(r[g.slot(m)] + r[g.slot(-m)]) <= 1e-15);
  }

  const std::int64_t k0 = 7;
  const Field lap = apply_multiplier(forward_transform(mode(g, k0)), MultiplierKind::Laplacian, p);
  CHECK(std::abs(lap[g.slot(k0)] - Complex(-4.0 * kPi * kPi * 49.0)) <= 1e-12 * 4.0 * kPi * kPi * 49.0);
  CHECK_THROWS_AS(apply_multiplier(Field::zeros(g, Space::Physical), MultiplierKind::PH, p), ContractError);
}

TEST_CASE("cascade operator") {
  const PhysParams p = params();
  const Grid g(32, 1.6);  // dx = 0.05
  const Field one(g, Space::Physical, std::vector<Complex>(32, 1.0));
  const Field lu = apply_L(one, p);
  const std::size_t j = g.slot(1);
  CHECK(g.x(j) == doctest::Approx(0.05));
  CHECK(std::abs(lu[j] - Complex(0.0, kPi)) <= 1e-14);
  CHECK(lu[g.origin()] == Complex(0.0));
  CHECK_THROWS_AS(apply_L(Field::zeros(g, Space::Spectral), p), ContractError);
}

TEST_CASE("cascade operator is skew") {
  const PhysParams p = params();
  const Grid g(1024, 1.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Field u = random_field(g, Space::Physical, seed);
    const Field lu = apply_L(u, p);
    double re = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      re += (std::conj(u[j]) * lu[j]).real() * g.dx();
      scale += std::abs(u[j]) * std::abs(lu[j]) * g.dx();
    }
    CHECK(std::abs(re) <= 1e-12 * scale);
  }
}

TEST_CASE("cascade operator is transport in k") {
  // smooth Gaussian packet: forward(L u) = -c d/dk u_hat; compare with a centered difference
  PhysParams p = params();
  p.c = 3.0;
  const Grid g(512, 8.0);
  std::vector<Complex> v(512);
  for (std::size_t j = 0; j < 512; ++j) v[j] = std::exp(-g.x(j) * g.x(j) / 2.0) * std::polar(1.0, 2.0 * kPi * 0.5 * g.x(j));
  const Field u(g, Space::Physical, v);
  const Field uh = forward_transform(u);
  const Field luh = forward_transform(apply_L(u, p));
  const double dk = g.dk();
  double err = 0.0, ref = 0.0;
  for (std::size_t j = 1; j + 1 < 512; ++j) {
    const Complex fd = -p.c * (uh[j + 1] - uh[j - 1]) / (2.0 * dk);
    err = std::max(err, std::abs(luh[j] - fd));
    ref = std::max(ref, std::abs(luh[j]));
  }
  // truncation error of the centered difference ~ (dk^2/6) u''' relative to u'
  const double sigma_k = 1.0 / (2.0 * kPi);  // packet width in k
  CHECK(err / ref <= 2.0 * dk * dk / (sigma_k * sigma_k));
}

TEST_CASE("padded size") {
  CHECK(padded_size(4096) == 6144);
  CHECK(padded_size(2) == 4);
  for (std::size_t n = 2; n <= 4096; n *= 2) {
    CHECK(padded_size(n) % 2 == 0);
    CHECK(2 * padded_size(n) >= 3 * n);
  }
}

TEST_CASE("de-aliased product of single modes") {
  const Grid g(64, 1.0);
  const Field a = forward_transform(mode(g, 1));
  const Field prod = dealias_product(a, a);
  for (std::size_t j = 0; j < 64; ++j) {
    const Complex want = j == g.slot(2) ? Complex(1.0) : Complex(0.0);  // exp(4 i pi x) -> L_tot at 2 dk
    CHECK(std::abs(prod[j] - want) <= 1e-12);
  }
  const Field ny = forward_transform(mode(g, 32));
  const Field zero = dealias_product(ny, ny);
  CHECK(max_abs(zero.values()) <= 1e-12);
  // aliased product on the N-lattice would fold 64 dk back onto 0
  const Field naive = forward_transform(Field(g, Space::Physical, [&] {
    auto v = mode(g, 32).data();
    for (auto& z : v) z *= z;
    return v;
  }()));
  CHECK(std::abs(naive[g.origin()]) == doctest::Approx(1.0));
}

TEST_CASE("de-aliased product equals the refined-grid product") {
  const Grid g(128, 1.0), g2(256, 1.0);
  for (std::uint64_t seed : {21u, 22u}) {
    const Field a = band_limited(g, 128 / 3, seed);
    const Field b = band_limited(g, 128 / 3, seed + 100);
    // embed in the 2N lattice, multiply pointwise with direct sums, truncate back
    std::vector<Complex> a2(256), b2(256);
    for (std::size_t j = 0; j < 128; ++j) {
      a2[g2.slot(g.index(j))] = a[j];
      b2[g2.slot(g.index(j))] = b[j];
    }
    std::vector<Complex> pa(256), pb(256), prod(256);
    for (std::size_t i = 0; i < 256; ++i) {
      for (std::size_t m = 0; m < 256; ++m) {
        const Complex e = std::polar(1.0, 2.0 * kPi * g2.k(m) * g2.x(i));
        pa[i] += a2[m] * e * g2.dk();
        pb[i] += b2[m] * e * g2.dk();
      }
      prod[i] = pa[i] * pb[i];
    }
    const auto ph = dft_forward(g2, prod);
    std::vector<Complex> want(128);
    for (std::size_t j = 0; j < 128; ++j) want[j] = ph[g2.slot(g.index(j))];
    const Field got = dealias_product(a, b);
    CHECK(max_diff(got.values(), want) <= 1e-12 * max_abs(want));
  }
}

TEST_CASE("de-aliased product is bilinear and commutative") {
  const Grid g(256, 1.0);
  const Field a = random_field(g, Space::Spectral, 31);
  const Field b = random_field(g, Space::Spectral, 32);
  const Field c = random_field(g, Space::Spectral, 33);
  const Field ab = dealias_product(a, b), ba = dealias_product(b, a);
  CHECK(max_diff(ab.values(), ba.values()) <= 1e-12 * max_abs(ab.values()));
  std::vector<Complex> s(256);
  const Complex alpha(0.7, -0.2);
  for (std::size_t j = 0; j < 256; ++j) s[j] = alpha * a[j] + c[j];
  const Field lhs = dealias_product(Field(g, Space::Spectral, s), b);
  const Field cb = dealias_product(c, b);
  std::vector<Complex> rhs(256);
  for (std::size_t j = 0; j < 256; ++j) rhs[j] = alpha * ab[j] + cb[j];
  CHECK(max_diff(lhs.values(), rhs) <= 1e-12 * max_abs(rhs));
  // physical inputs give the same result as their spectra
  const Field abp = dealias_product(inverse_transform(a), inverse_transform(b));
  CHECK(max_diff(abp.values(), ab.values()) <= 1e-12 * max_abs(ab.values()));
  CHECK_THROWS_AS(dealias_product(a, Field::zeros(Grid(128, 1.0), Space::Spectral)), ContractError);
}

TEST_CASE("parameter validation and warnings") {
  PhysParams p = params();
  CHECK_NOTHROW(p.validate());
  p.c = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = params();
  p.L = 2.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = params();
  p.nu = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = params();
  CHECK(p.forcing_variance() == doctest::Approx(std::sqrt(kPi) * 0.1));
  CHECK(p.viscous_wavenumber() == std::numeric_limits<double>::infinity());
  p.nu = 1e-5;
  CHECK(p.viscous_wavenumber() == doctest::Approx(100.0));
  p.gamma = std::sqrt(0.02);
  CHECK(p.intermittency() == doctest::Approx(0.02 * std::sqrt(kPi) * 0.1 / 10.0));
  CHECK(multifractal_warnings(p).empty());
  p.gamma = 10.0;
  CHECK_FALSE(multifractal_warnings(p).empty());
}

}
