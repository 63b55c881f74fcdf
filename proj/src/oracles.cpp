#include "cspde/oracles.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "cspde/forcing.hpp"

namespace cspde {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Integrals this small are indistinguishable from zero for every oracle here.
constexpr double kUnderflow = 1e-250;

struct Quad {
  double value;
  double error;
};

// Composite 20-point Gauss-Legendre; panels doubled until two successive
// resolutions agree. The error is the difference of the last two.
template <class F>
Quad composite(F f, double a, double b, double rel_tol = 1e-13) {
  if (!(b > a)) return {0.0, 0.0};
  auto run = [&](int panels) {
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int i = 0; i < panels; ++i)
      s += boost::math::quadrature::gauss<double, 20>::integrate(f, a + i * h, a + (i + 1) * h);
    return s;
  };
  double prev = run(4);
  for (int panels = 8; panels <= (1 << 16); panels *= 2) {
    const double cur = run(panels);
    const double err = std::abs(cur - prev);
    if (err <= rel_tol * std::abs(cur) || err < kUnderflow) return {cur, err};
    prev = cur;
  }
  throw QuadratureError("composite Gauss-Legendre did not converge on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
}

// beyond this the Gaussian forcing spectrum is below double precision relevance
double forcing_support(double L) { return 5.0 / L; }

double weight_pow(double s, const PhysParams& p) { return std::pow(reg_norm(s, p.L), 2.0 * p.H + 1.0); }

Quad weighted_forcing_integral(double lo, double hi, const PhysParams& p) {
  const double S = forcing_support(p.L);
  lo = std::max(lo, -S);
  hi = std::min(hi, S);
  return composite([&](double s) { return weight_pow(s, p) * forcing_spectrum(s, p.L); }, lo, hi);
}

// int_lo^hi C_f^(s) ds in closed form, written to avoid cancellation in the tails
double forcing_mass(double lo, double hi, double L) {
  const double a = 2.0 * kPi * L;
  const double pre = 0.5 * std::sqrt(kPi) * L;
  if (lo >= 0.0) return pre * (std::erfc(a * lo) - std::erfc(a * hi));
  if (hi <= 0.0) return pre * (std::erfc(-a * hi) - std::erfc(-a * lo));
  return pre * (std::erf(a * hi) - std::erf(a * lo));
}

void add_params(OracleReport& r, const PhysParams& p) {
  r.inputs.insert(r.inputs.end(),
                  {{"H", p.H}, {"gamma", p.gamma}, {"nu", p.nu}, {"c", p.c}, {"L", p.L}, {"L_tot", p.L_tot}});
}

}  // namespace

const char* to_string(OracleMethod m) {
  switch (m) {
    case OracleMethod::ClosedForm: return "closed_form";
    case OracleMethod::Quadrature: return "quadrature";
    case OracleMethod::Characteristics: return "characteristics";
  }
  return "?";
}

double OracleReport::value(const std::string& key) const {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  throw ContractError("oracle report '" + name + "' has no value '" + key + "'");
}

double forcing_spectrum(double k, double L) { return 2.0 * kPi * L * L * std::exp(-4.0 * kPi * kPi * k * k * L * L); }

OracleReport stationary_spectrum(double k, const PhysParams& p) {
  if (!(p.H > 0.0)) throw ConfigError("stationary spectrum needs H > 0");
  OracleReport r;
  r.name = "stationary_spectrum";
  add_params(r, p);
  r.inputs.push_back({"k", k});
  r.method = OracleMethod::Quadrature;
  r.units = "length^2 per unit wavenumber";
  const Quad q = p.c > 0.0 ? weighted_forcing_integral(-kInf, k, p) : weighted_forcing_integral(k, kInf, p);
  const double pre = 1.0 / (std::abs(p.c) * weight_pow(k, p));
  r.values.push_back({"density", pre * q.value});
  r.error_estimate = pre * q.error;
  return r;
}

OracleReport finite_time_spectrum(double t, double k, const PhysParams& p, Weighting w) {
  if (!(t >= 0.0)) throw ConfigError("time must be >= 0");
  OracleReport r;
  r.name = w == Weighting::Fractional ? "finite_time_spectrum" : "finite_time_spectrum_hamiltonian";
  add_params(r, p);
  r.inputs.push_back({"t", t});
  r.inputs.push_back({"k", k});
  r.units = "length^2 per unit wavenumber";
  // sigma = k - c s sweeps [lo, hi] for s in [0, t]
  const double lo = std::min(k, k - p.c * t), hi = std::max(k, k - p.c * t);
  if (w == Weighting::Hamiltonian) {
    r.method = OracleMethod::ClosedForm;
    r.values.push_back({"density", forcing_mass(lo, hi, p.L) / std::abs(p.c)});
    return r;
  }
  r.method = OracleMethod::Quadrature;
  const Quad q = weighted_forcing_integral(lo, hi, p);
  const double pre = 1.0 / (std::abs(p.c) * weight_pow(k, p));
  r.values.push_back({"density", pre * q.value});
  r.error_estimate = pre * q.error;
  return r;
}

OracleReport viscous_spectrum(double t, double k, const PhysParams& p, Weighting w) {
  if (!(t >= 0.0)) throw ConfigError("time must be >= 0");
  OracleReport r;
  r.name = w == Weighting::Fractional ? "viscous_spectrum_fractional" : "viscous_spectrum";
  add_params(r, p);
  r.inputs.push_back({"t", t});
  r.inputs.push_back({"k", k});
  r.units = "length^2 per unit wavenumber";
  r.method = OracleMethod::Quadrature;
  const double S = forcing_support(p.L);
  double s0 = (k - S) / p.c, s1 = (k + S) / p.c;
  if (s0 > s1) std::swap(s0, s1);
  s0 = std::max(s0, 0.0);
  s1 = std::min(s1, t);
  const double c = p.c, nu = p.nu;
  const double wk = w == Weighting::Fractional ? weight_pow(k, p) : 1.0;
  auto f = [&](double s) {
    const double sig = k - c * s;
    const double damp = std::exp(-2.0 * (2.0 * kPi) * (2.0 * kPi) * nu * (k * s * sig + c * c * s * s * s / 3.0));
    const double wt = w == Weighting::Fractional ? weight_pow(sig, p) / wk : 1.0;
    return damp * wt * forcing_spectrum(sig, p.L);
  };
  const Quad q = composite(f, s0, s1);
  r.values.push_back({"density", q.value});
  r.error_estimate = q.error;
  return r;
}

OracleReport spectral_moment(const PhysParams& p) {
  OracleReport r;
  r.name = "spectral_moment";
  add_params(r, p);
  r.method = OracleMethod::Quadrature;
  const Quad q = weighted_forcing_integral(-kInf, kInf, p);
  r.values.push_back({"moment", q.value});
  r.error_estimate = q.error;
  return r;
}

OracleReport cosine_integral(double H) {
  if (!(H > 0.0 && H < 1.0)) throw ConfigError("cosine integral needs H in (0, 1)");
  OracleReport r;
  r.name = "cosine_integral";
  r.inputs.push_back({"H", H});
  r.method = OracleMethod::Quadrature;
  const double a = 2.0 * H;
  // integrate by parts: (2 pi / a) int_0^inf sin(2 pi k) k^{-a} dk, split at k = 1.
  // On [0, 1] the leading term 2 pi k^(1-a) is integrated exactly and the
  // smooth remainder (sin z - z) k^-a numerically.
  boost::math::quadrature::tanh_sinh<double> ts;
  double head_err = 0.0;
  const double head = 2.0 * kPi / (2.0 - a) +
                      ts.integrate(
                          [a](double k) {
                            const double z = 2.0 * kPi * k;
                            if (z < 1e-2)
                              return std::pow(2.0 * kPi, 3) * std::pow(k, 3.0 - a) * (-1.0 / 6.0 + z * z / 120.0);
                            return (std::sin(z) - z) * std::pow(k, -a);
                          },
                          0.0, 1.0, 1e-15, &head_err);
  boost::math::quadrature::ooura_fourier_sin<double> ooura(1e-14, 12);
  // sin(2 pi (t + 1)) = sin(2 pi t)
  const auto [tail, rel] = ooura.integrate([a](double t) { return std::pow(t + 1.0, -a); }, 2.0 * kPi);
  const double v = head + tail;
  const double num = 2.0 * kPi / a * v;
  const double closed = std::pow(2.0 * kPi, a) * kPi / (2.0 * std::tgamma(1.0 + a) * std::sin(kPi * H));
  r.values.push_back({"quadrature", num});
  r.values.push_back({"closed_form", closed});
  r.error_estimate = 2.0 * kPi / a * (head_err + std::abs(tail * rel));
  return r;
}

OracleReport c_H(const PhysParams& p) {
  if (!(p.H > 0.0 && p.H < 1.0)) throw ConfigError("c_H needs H in (0, 1)");
  OracleReport r;
  r.name = "c_H";
  add_params(r, p);
  r.method = OracleMethod::Quadrature;
  r.units = "length^(2 - 2H)";
  const OracleReport I = spectral_moment(p);
  const OracleReport J = cosine_integral(p.H);
  const double ac = std::abs(p.c);
  const double gamma_form = 0.5 / ac * std::pow(2.0 * kPi, 2.0 * p.H + 1.0) /
                            (std::sin(kPi * p.H) * std::tgamma(1.0 + 2.0 * p.H)) * I.value();
  const double definitional = 2.0 / ac * I.value() * J.value("quadrature");
  r.values.push_back({"c_H", gamma_form});
  r.values.push_back({"definitional", definitional});
  r.values.push_back({"spectral_moment", I.value()});
  r.error_estimate = gamma_form * (I.error_estimate / I.value());
  r.note = "definitional error estimate " + std::to_string(definitional * (I.error_estimate / I.value() +
                                                                         J.error_estimate / J.value("quadrature")));
  return r;
}

const char* to_string(ExponentKind k) {
  switch (k) {
    case ExponentKind::FgfS2: return "fgf_s2";
    case ExponentKind::GmcMoment: return "gmc_moment";
    case ExponentKind::MultifractalS2q: return "multifractal_s2q";
    case ExponentKind::ThirdOrder: return "third_order";
    case ExponentKind::FlatnessSlope: return "flatness_slope";
  }
  return "?";
}

ExponentKind parse_exponent_kind(const std::string& s) {
  for (auto k : {ExponentKind::FgfS2, ExponentKind::GmcMoment, ExponentKind::MultifractalS2q, ExponentKind::ThirdOrder,
                 ExponentKind::FlatnessSlope})
    if (s == to_string(k)) return k;
  throw ConfigError("unknown exponent kind '" + s + "'");
}

ExponentReport scaling_exponent(ExponentKind kind, int q, const PhysParams& p) {
  if (q < 1) throw ConfigError("moment order q must be >= 1");
  const double a = p.intermittency();
  const double H = p.H;
  const double Q = q;
  ExponentReport r{0.0, kInf, true, ""};
  switch (kind) {
    case ExponentKind::FgfS2:
      r.value = 2.0 * H;
      break;
    case ExponentKind::GmcMoment:
      r.value = Q * Q * a;
      r.bound = 1.0 / Q;
      break;
    case ExponentKind::MultifractalS2q:
      r.value = 2.0 * Q * H - Q * Q * a;
      r.bound = std::min(2.0 * H / Q, 1.0);
      break;
    case ExponentKind::ThirdOrder:
      r.value = 3.0 * H - 2.0 * a;
      r.bound = std::min(1.0, 1.5 * H);
      break;
    case ExponentKind::FlatnessSlope:
      r.value = -2.0 * a;
      r.bound = std::min(H, 1.0);
      break;
  }
  r.valid = a < r.bound;
  if (!r.valid) {
    std::ostringstream os;
    os << "gamma^2 C_f(0)/|c| = " << a << " outside the validity bound " << r.bound;
    r.note = os.str();
  }
  return r;
}

OracleReport truncation_weight(double L_tot) {
  OracleReport r;
  r.name = "truncation_weight";
  r.inputs.push_back({"L_tot", L_tot});
  r.method = OracleMethod::Quadrature;
  r.units = "fraction of L_tot";
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0;
  const double h = 0.5 * L_tot;
  const double v = ts.integrate(
      [L_tot](double x) {
        const double w = truncation_window(x, L_tot);
        return w * w;
      },
      -h, h, 1e-14, &err);
  r.values.push_back({"weight", v / L_tot});
  r.error_estimate = err / L_tot;
  return r;
}

OracleReport viscous_s_integral() {
  OracleReport r;
  r.name = "viscous_s_integral";
  r.method = OracleMethod::Quadrature;
  const double b = 2.0 / 3.0 * (2.0 * kPi) * (2.0 * kPi);
  boost::math::quadrature::exp_sinh<double> es;
  double err = 0.0;
  const double v = es.integrate([b](double s) { return std::exp(-b * s * s * s); }, 0.0, kInf, 1e-15, &err);
  r.values.push_back({"quadrature", v});
  r.values.push_back({"closed_form", std::tgamma(4.0 / 3.0) * std::pow(b, -1.0 / 3.0)});
  r.error_estimate = err;
  return r;
}

OracleReport misc_constants(const PhysParams& p) {
  OracleReport r;
  r.name = "misc_constants";
  add_params(r, p);
  r.method = OracleMethod::Quadrature;
  const OracleReport tw = truncation_weight(p.L_tot);
  const OracleReport si = viscous_s_integral();
  r.values.push_back({"truncation_weight", tw.value()});
  r.values.push_back({"k_nu", p.viscous_wavenumber()});
  r.values.push_back({"viscous_s_integral", si.value("closed_form")});
  const double lim = p.nu > 0.0 ? p.forcing_variance() * si.value("closed_form") /
                                      (std::cbrt(p.nu) * std::pow(std::abs(p.c), 2.0 / 3.0))
                                : kInf;
  r.values.push_back({"viscous_variance_limit", lim});
  r.error_estimate = tw.error_estimate;
  return r;
}

OracleReport fgf_statics(double H, const PhysParams& p) {
  if (!(H >= 0.0 && H < 1.0)) throw ConfigError("H must lie in [0, 1)");
  OracleReport r;
  r.name = "fgf_statics";
  add_params(r, p);
  r.inputs.push_back({"H_field", H});
  const double ac = std::abs(p.c);
  const double cf = p.forcing_variance();
  if (H == 0.0) {
    r.method = OracleMethod::ClosedForm;
    r.values.push_back({"log_slope", cf / ac});
    r.warning = true;
    r.note = "variance diverges logarithmically at H = 0; only the log slope C_f(0)/|c| is finite";
    return r;
  }
  r.method = OracleMethod::Quadrature;
  boost::math::quadrature::exp_sinh<double> es;
  double err = 0.0;
  const double L = p.L;
  const double half = es.integrate([&](double k) { return std::pow(k * k + 1.0 / (L * L), -(H + 0.5)); }, 0.0, kInf,
                                   1e-15, &err);
  const double pre = cf / (2.0 * ac);
  const double variance = pre * 2.0 * half;
  const double closed = cf / ac * std::pow(L, 2.0 * H) * std::sqrt(kPi) * std::tgamma(H) / (2.0 * std::tgamma(H + 0.5));
  const OracleReport J = cosine_integral(H);
  r.values.push_back({"variance", variance});
  r.values.push_back({"variance_closed_form", closed});
  r.values.push_back({"increment_prefactor", pre * 4.0 * J.value("quadrature")});
  r.values.push_back({"increment_prefactor_gamma",
                      pre * std::pow(2.0 * kPi, 2.0 * H + 1.0) / (std::sin(kPi * H) * std::tgamma(1.0 + 2.0 * H))});
  r.values.push_back({"log_slope", cf / ac});
  r.error_estimate = pre * 2.0 * err;
  return r;
}

std::vector<OracleReport> oracle_by_name(const std::string& quantity, const PhysParams& p,
                                         const std::vector<double>& ks, double t) {
  std::vector<OracleReport> out;
  if (quantity == "stationary_spectrum") {
    for (double k : ks) out.push_back(stationary_spectrum(k, p));
  } else if (quantity == "finite_time_spectrum") {
    for (double k : ks) out.push_back(finite_time_spectrum(t, k, p));
  } else if (quantity == "viscous_spectrum") {
    for (double k : ks) out.push_back(viscous_spectrum(t, k, p, Weighting::Hamiltonian));
  } else if (quantity == "fractional_viscous_spectrum") {
    for (double k : ks) out.push_back(viscous_spectrum(t, k, p, Weighting::Fractional));
  } else if (quantity == "c_h") {
    out.push_back(c_H(p));
  } else if (quantity == "misc_constants") {
    out.push_back(misc_constants(p));
  } else if (quantity == "truncation_weight") {
    out.push_back(truncation_weight(p.L_tot));
  } else if (quantity == "viscous_s_integral") {
    out.push_back(viscous_s_integral());
  } else if (quantity == "fgf_statics") {
    out.push_back(fgf_statics(p.H, p));
  } else if (quantity == "exponents") {
    for (auto kind : {ExponentKind::FgfS2, ExponentKind::GmcMoment, ExponentKind::MultifractalS2q,
                      ExponentKind::ThirdOrder, ExponentKind::FlatnessSlope}) {
      for (int q = 1; q <= (kind == ExponentKind::GmcMoment || kind == ExponentKind::MultifractalS2q ? 4 : 1); ++q) {
        const ExponentReport e = scaling_exponent(kind, q, p);
        OracleReport r;
        r.name = std::string("exponent_") + to_string(kind);
        add_params(r, p);
        r.inputs.push_back({"q", static_cast<double>(q)});
        r.values.push_back({"zeta", e.value});
        r.values.push_back({"bound", e.bound});
        r.warning = !e.valid;
        r.note = e.note;
        out.push_back(r);
      }
    }
  } else {
    throw ConfigError("unknown oracle quantity '" + quantity + "'");
  }
  return out;
}

}  // namespace cspde
