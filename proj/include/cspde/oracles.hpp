#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cspde/operators.hpp"

namespace cspde {

enum class OracleMethod { ClosedForm, Quadrature, Characteristics };

const char* to_string(OracleMethod m);

struct OracleReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> values;
  std::string units;
  OracleMethod method = OracleMethod::ClosedForm;
  double error_estimate = 0.0;  // absolute, of the first value
  bool warning = false;
  std::string note;

  double value() const { return values.at(0).second; }
  double value(const std::string& key) const;
};

// 2 pi L^2 exp(-4 pi^2 k^2 L^2)
double forcing_spectrum(double k, double L);

// Weighting of the forcing spectrum along characteristics: the Hamiltonian
// dynamics transports u itself, the fractional one transports P_H^-1 u.
enum class Weighting { Hamiltonian, Fractional };

// Stationary spectral density of the inviscid fractional dynamics:
// (1/|c|) |k|_{1/L}^{-(2H+1)} int_{-inf}^{k} |s|_{1/L}^{2H+1} C_f^(s) ds for c > 0,
// upper integration range [k, inf) for c < 0.
OracleReport stationary_spectrum(double k, const PhysParams& p);

// Spectral density at finite time t, inviscid. Fractional weighting evaluates the
// characteristics integral by quadrature; Hamiltonian weighting uses the erf closed form.
OracleReport finite_time_spectrum(double t, double k, const PhysParams& p,
                                  Weighting w = Weighting::Fractional);

// Spectral density with viscous damping along characteristics, by quadrature in s.
// t may be +infinity.
OracleReport viscous_spectrum(double t, double k, const PhysParams& p, Weighting w = Weighting::Hamiltonian);

// Second-order structure function prefactor of the stationary fractional dynamics.
// value "c_H" is the Gamma-function form, "definitional" the form with the oscillatory
// integral int_0^inf (1 - cos 2 pi k) k^{-(2H+1)} dk evaluated numerically.
OracleReport c_H(const PhysParams& p);

// int_{-inf}^{inf} |s|_{1/L}^{2H+1} C_f^(s) ds
OracleReport spectral_moment(const PhysParams& p);

// int_0^inf (1 - cos 2 pi k) k^{-(2H+1)} dk by oscillatory quadrature; and its Gamma closed form.
OracleReport cosine_integral(double H);

enum class ExponentKind { FgfS2, GmcMoment, MultifractalS2q, ThirdOrder, FlatnessSlope };

const char* to_string(ExponentKind k);
ExponentKind parse_exponent_kind(const std::string& s);

struct ExponentReport {
  double value;
  double bound;    // validity bound on gamma^2 C_f(0)/|c|, +inf when none applies
  bool valid;
  std::string note;
};

ExponentReport scaling_exponent(ExponentKind kind, int q, const PhysParams& p);

// truncation weight (quadrature of the squared window), k_nu, the viscous
// s-integral and the viscous variance limit.
OracleReport misc_constants(const PhysParams& p);

// exp(-(2/3)(2 pi)^2 s^3) integrated over s >= 0, quadrature and Gamma form.
OracleReport viscous_s_integral();

// (1/L_tot) int window(x)^2 dx
OracleReport truncation_weight(double L_tot);

// Variance, small-scale increment prefactor and H = 0 log slope of the
// fractional Gaussian field P_H u_0.
OracleReport fgf_statics(double H, const PhysParams& p);

// Named dispatcher used by the command line. Unknown names raise ConfigError.
std::vector<OracleReport> oracle_by_name(const std::string& quantity, const PhysParams& p,
                                         const std::vector<double>& ks, double t);

}  // namespace cspde
