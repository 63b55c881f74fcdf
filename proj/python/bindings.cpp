#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cspde/cli.hpp"
#include "cspde/config.hpp"
#include "cspde/dynamics.hpp"
#include "cspde/errors.hpp"
#include "cspde/oracles.hpp"
#include "cspde/snapshot.hpp"
#include "cspde/statistics.hpp"
#include "cspde/synthesis.hpp"

namespace py = pybind11;
using namespace cspde;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

CArray to_array(const std::vector<Complex>& v) {
  CArray a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

std::vector<Complex> to_vector(const CArray& a) {
  if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

Field physical(const CArray& a, double L_tot) {
  const auto v = to_vector(a);
  return Field(Grid(v.size(), L_tot), Space::Physical, v);
}

py::dict report_dict(const OracleReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["method"] = to_string(r.method);
  for (const auto& [k, v] : r.values) d[py::str(k)] = v;
  d["error_estimate"] = r.error_estimate;
  d["units"] = r.units;
  d["warning"] = r.warning;
  d["note"] = r.note;
  return d;
}

py::dict table_dict(const StatsTable& t) {
  py::dict d;
  d["estimator"] = t.estimator;
  d["abscissa_name"] = t.abscissa_name;
  d["abscissa"] = py::array_t<double>(t.abscissa.size(), t.abscissa.data());
  d["estimate"] = py::array_t<double>(t.estimate.size(), t.estimate.data());
  d["std_error"] = py::array_t<double>(t.std_error.size(), t.std_error.data());
  d["n_fields"] = t.n_fields;
  return d;
}

PhysParams make_params(double H, double gamma, double nu, double c, double L, double L_tot) {
  PhysParams p;
  p.H = H;
  p.gamma = gamma;
  p.nu = nu;
  p.c = c;
  p.L = L;
  p.L_tot = L_tot;
  p.validate();
  return p;
}

std::vector<Field> fields(const std::vector<CArray>& arrays, double L_tot) {
  std::vector<Field> out;
  for (const auto& a : arrays) out.push_back(physical(a, L_tot));
  if (out.empty()) throw py::value_error("need at least one field");
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stochastic cascade model: solver, synthesis, estimators and oracles";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_IOError);
  py::register_exception<InstabilityError>(m, "InstabilityError", PyExc_ArithmeticError);

  py::class_<PhysParams>(m, "Params")
      .def(py::init(&make_params), py::arg("H") = 1.0 / 3.0, py::arg("gamma") = 0.0, py::arg("nu") = 0.0,
           py::arg("c") = 10.0, py::arg("L") = 0.1, py::arg("L_tot") = 1.0)
      .def_readwrite("H", &PhysParams::H)
      .def_readwrite("gamma", &PhysParams::gamma)
      .def_readwrite("nu", &PhysParams::nu)
      .def_readwrite("c", &PhysParams::c)
      .def_readwrite("L", &PhysParams::L)
      .def_readwrite("L_tot", &PhysParams::L_tot)
      .def("forcing_variance", &PhysParams::forcing_variance)
      .def("intermittency", &PhysParams::intermittency)
      .def("viscous_wavenumber", &PhysParams::viscous_wavenumber);

  m.def("lattice", [](std::size_t n, double L_tot) {
    const Grid g(n, L_tot);
    const auto x = g.x_lattice(), k = g.k_lattice();
    return py::make_tuple(py::array_t<double>(x.size(), x.data()), py::array_t<double>(k.size(), k.data()));
  }, py::arg("n"), py::arg("L_tot"), "Physical and spectral lattices (x, k).");
  m.def("forward", [](const CArray& u, double L_tot) { return to_array(forward_transform(physical(u, L_tot)).data()); },
        py::arg("u"), py::arg("L_tot"));
  m.def("inverse", [](const CArray& uh, double L_tot) {
    const auto v = to_vector(uh);
    return to_array(inverse_transform(Field(Grid(v.size(), L_tot), Space::Spectral, v)).data());
  }, py::arg("u_hat"), py::arg("L_tot"));

  m.def("stationary_spectrum", [](double k, const PhysParams& p) { return report_dict(stationary_spectrum(k, p)); });
  m.def("finite_time_spectrum", [](double t, double k, const PhysParams& p) {
    return report_dict(finite_time_spectrum(t, k, p));
  });
  m.def("c_H", [](const PhysParams& p) { return report_dict(c_H(p)); });
  m.def("truncation_weight", [](double L_tot) { return truncation_weight(L_tot).value(); }, py::arg("L_tot") = 1.0);
  m.def("viscous_s_integral", [] { return report_dict(viscous_s_integral()); });
  m.def("fgf_statics", [](double H, const PhysParams& p) { return report_dict(fgf_statics(H, p)); });
  m.def("scaling_exponent", [](const std::string& kind, int q, const PhysParams& p) {
    const auto r = scaling_exponent(parse_exponent_kind(kind), q, p);
    py::dict d;
    d["value"] = r.value;
    d["bound"] = r.bound;
    d["valid"] = r.valid;
    d["note"] = r.note;
    return d;
  }, py::arg("kind"), py::arg("q"), py::arg("params"));

  m.def("synthesize", [](const std::string& kind, std::size_t n, const PhysParams& p, std::uint64_t seed,
                         std::uint64_t stream) {
    NoiseStream s(seed, stream);
    const SynthField f = synthesize(parse_synth_kind(kind), Grid(n, p.L_tot), p, s);
    return py::make_tuple(to_array(f.values.data()), f.warnings);
  }, py::arg("kind"), py::arg("n"), py::arg("params"), py::arg("seed") = 1, py::arg("stream") = 0,
        "Physical-space field and validity warnings.");

  m.def("resolve_config", [](const std::string& text) { return render_resolved(resolve(parse_config(text))); },
        py::arg("text"), "Config text with every default filled in.");
  m.def("simulate", [](const std::string& text) {
    const ResolvedConfig rc = resolve(parse_config(text));
    std::vector<std::vector<Complex>> snaps;
    std::vector<double> times, energy;
    RunCallbacks cb;
    cb.on_snapshot = [&](const SimState& s) {
      snaps.push_back(inverse_transform(s.u).data());
      times.push_back(s.t);
    };
    cb.on_energy = [&](const EnergySample& e) { energy.push_back(e.energy); };
    const SimulationResult r = [&] {
      py::gil_scoped_release release;
      return run_simulation(rc.cfg, cb);
    }();
    py::list arrays;
    for (const auto& v : snaps) arrays.append(to_array(v));
    py::dict d;
    d["snapshots"] = arrays;
    d["times"] = times;
    d["energy"] = py::array_t<double>(energy.size(), energy.data());
    d["stationary"] = r.stationarity.stationary;
    d["drift"] = r.stationarity.drift;
    d["config_hash"] = config_hash(rc);
    return d;
  }, py::arg("config_text"), "Runs a simulation; snapshots are returned in physical space.");

  m.def("periodogram", [](const std::vector<CArray>& u, double L_tot) {
    const auto f = fields(u, L_tot);
    return table_dict(periodogram_avg(f));
  }, py::arg("fields"), py::arg("L_tot"));
  m.def("structure_function", [](const std::vector<CArray>& u, int q, double L_tot, double region) {
    const auto f = fields(u, L_tot);
    return table_dict(structure_function(f, q, HomogeneousRegion{region}));
  }, py::arg("fields"), py::arg("q"), py::arg("L_tot"), py::arg("region") = 0.2);
  m.def("flatness", [](const std::vector<CArray>& u, double L_tot, double region) {
    const auto f = fields(u, L_tot);
    return table_dict(flatness_curve(f, HomogeneousRegion{region}));
  }, py::arg("fields"), py::arg("L_tot"), py::arg("region") = 0.2);
  m.def("skewness", [](const std::vector<CArray>& u, const std::string& part, double L_tot, double region) {
    const auto f = fields(u, L_tot);
    if (part != "real" && part != "imag") throw py::value_error("part must be 'real' or 'imag'");
    return table_dict(skewness_curve(f, part == "real" ? Part::Real : Part::Imag, HomogeneousRegion{region}));
  }, py::arg("fields"), py::arg("part"), py::arg("L_tot"), py::arg("region") = 0.2);
  m.def("fit_power_law", [](const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
    StatsTable t;
    t.abscissa = x;
    t.estimate = y;
    t.std_error.assign(x.size(), 0.0);
    t.n_samples.assign(x.size(), 1);
    const PowerLawFit f = fit_power_law(t, lo, hi);
    return py::make_tuple(f.slope, f.slope_se);
  }, py::arg("x"), py::arg("y"), py::arg("lo"), py::arg("hi"), "Slope and its standard error in log-log.");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int rc = run_cli(args, out, err);
    return py::make_tuple(rc, out.str(), err.str());
  }, py::arg("args"), "Runs the cspde tool in-process; returns (exit code, stdout, stderr).");
}
