#include "cspde/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "cspde/dynamics.hpp"
#include "cspde/errors.hpp"
#include "cspde/oracles.hpp"
#include "cspde/snapshot.hpp"
#include "cspde/statistics.hpp"
#include "cspde/synthesis.hpp"
#include "cspde/table_io.hpp"
#include "cspde/text.hpp"

#ifndef CSPDE_VERSION
#define CSPDE_VERSION "unknown"
#endif

namespace fs = std::filesystem;

namespace cspde {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string field_name(std::uint64_t i) {
  char b[32];
  std::snprintf(b, sizeof b, "field_%06llu.bin", static_cast<unsigned long long>(i));
  return b;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v;
    if (!parse_double(trim(item), v)) throw ConfigError("bad number '" + item + "' in list");
    out.push_back(v);
  }
  return out;
}

// "lo:hi:n" log-spaced, or a comma list
std::vector<double> parse_ks(const std::string& s) {
  if (s.find(':') == std::string::npos) return parse_list(s);
  std::stringstream ss(s);
  std::string a, b, c;
  std::getline(ss, a, ':');
  std::getline(ss, b, ':');
  std::getline(ss, c, ':');
  double lo, hi;
  std::uint64_t n;
  if (!parse_double(a, lo) || !parse_double(b, hi) || !parse_u64(c, n) || !(lo > 0.0) || !(hi > lo) || n < 2)
    throw ConfigError("k range must be lo:hi:n with 0 < lo < hi and n >= 2");
  std::vector<double> out;
  for (std::uint64_t i = 0; i < n; ++i)
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1)));
  return out;
}

Part parse_part(const std::string& s) {
  if (s == "real" || s == "re") return Part::Real;
  if (s == "imag" || s == "im") return Part::Imag;
  throw ConfigError("part must be real or imag");
}

double truncation_factor(ForcingMode m, double L_tot) {
  switch (m) {
    case ForcingMode::Truncated: return truncation_weight(L_tot).value();
    case ForcingMode::Full: return 1.0;
    case ForcingMode::None: return 0.0;
  }
  return 1.0;
}

void ensure_dir(const std::string& d) {
  std::error_code ec;
  fs::create_directories(d, ec);
  if (ec) throw std::runtime_error("cannot create directory '" + d + "': " + ec.message());
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") out << text;
  else write_text(path, text);
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  std::string config, out, variant, resume;
  std::vector<std::string> set;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

int cmd_simulate(const SimulateOpts& o, std::ostream& out) {
  std::vector<std::string> ov = o.set;
  if (o.seed_given) ov.push_back("seed=" + std::to_string(o.seed));
  if (!o.variant.empty()) ov.push_back("variant=" + o.variant);
  if (!o.out.empty()) ov.push_back("out=" + o.out);
  const RunConfig cfg = load_run_config(o.config, ov);
  const ResolvedConfig rc = resolve(cfg);
  std::optional<SimState> resume;
  if (!o.resume.empty()) resume = resume_state(read_snapshot(o.resume), rc);

  const std::string dir = cfg.out;
  ensure_dir(dir);
  const PhysParams p = rc.params();
  const std::string hash = config_hash(rc);
  std::vector<std::pair<std::string, std::string>> meta = {
      {"code_version", CSPDE_VERSION}, {"config_hash", hash}, {"energy", "energy.csv"}, {"status", "running"}};
  if (resume) meta.push_back({"resumed_from", o.resume});
  write_text(dir + "/manifest.txt", render_manifest(rc, meta));

  std::ofstream energy(dir + "/energy.csv", resume ? std::ios::app : std::ios::trunc);
  if (!energy) throw std::runtime_error("cannot write energy.csv in '" + dir + "'");
  if (!resume) energy << "t,energy,max_abs\n";
  std::uint64_t written = 0;
  const std::uint64_t burn = rc.burn_steps(), every = rc.interval_steps();

  RunCallbacks cb;
  cb.on_snapshot = [&](const SimState& s) {
    write_snapshot(make_snapshot(s, rc.dt, p), dir + "/" + snapshot_name((s.step_index - burn) / every));
    ++written;
  };
  cb.on_energy = [&](const EnergySample& e) {
    energy << format_double(e.t) << ',' << format_double(e.energy) << ',' << format_double(e.max_abs) << '\n';
  };
  cb.on_instability = [&](const SimState& s) {
    write_snapshot(make_snapshot(s, rc.dt, p), dir + "/last_finite.bin");
  };

  const auto t0 = std::chrono::steady_clock::now();
  std::string status = "ok";
  SimulationResult res;
  try {
    res = run_simulation(cfg, cb, resume);
  } catch (const InstabilityError&) {
    status = "unstable";
    energy.flush();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    meta[3].second = status;
    meta.push_back({"wall_time_s", format_double(wall)});
    meta.push_back({"snapshots", std::to_string(written)});
    write_text(dir + "/manifest.txt", render_manifest(rc, meta));
    throw;
  }
  energy.flush();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (res.final_state) write_snapshot(make_snapshot(*res.final_state, rc.dt, p), dir + "/final.bin");
  meta[3].second = status;
  meta.push_back({"wall_time_s", format_double(wall)});
  meta.push_back({"snapshots", std::to_string(written)});
  meta.push_back({"stationarity_drift", format_double(res.stationarity.drift)});
  meta.push_back({"stationary", res.stationarity.stationary ? "1" : "0"});
  write_text(dir + "/manifest.txt", render_manifest(rc, meta));
  out << "wrote " << written << " snapshots to " << dir << " in " << wall << " s (config " << hash << ")\n";
  if (!res.stationarity.stationary)
    out << "warning: energy drift " << res.stationarity.drift << " exceeds " << res.stationarity.threshold << "\n";
  return 0;
}

// ---------------------------------------------------------------- synth

struct SynthOpts {
  std::string config, out, kind = "fgf";
  std::vector<std::string> set;
  std::uint64_t seed = 0, count = 1;
  bool seed_given = false;
};

int cmd_synth(const SynthOpts& o, std::ostream& out) {
  std::vector<std::string> ov = o.set;
  if (o.seed_given) ov.push_back("seed=" + std::to_string(o.seed));
  if (!o.out.empty()) ov.push_back("out=" + o.out);
  const SynthKind kind = parse_synth_kind(o.kind);
  if (o.count == 0) throw ConfigError("--count must be positive");
  const RunConfig cfg = load_run_config(o.config, ov);
  const ResolvedConfig rc = resolve(cfg);
  const Grid grid = rc.grid();
  const PhysParams p = rc.params();
  ensure_dir(cfg.out);
  std::vector<std::string> warnings;
  for (std::uint64_t i = 0; i < o.count; ++i) {
    NoiseStream stream(cfg.seed, cfg.stream + i);
    SynthField f = synthesize(kind, grid, p, stream);
    if (i == 0) warnings = f.warnings;
    write_snapshot(Snapshot{kSnapshotVersion, 0.0, 0.0, p, forward_transform(f.values)}, cfg.out + "/" + field_name(i));
  }
  std::vector<std::pair<std::string, std::string>> meta = {{"code_version", CSPDE_VERSION},
                                                           {"config_hash", config_hash(rc)},
                                                           {"synth_kind", to_string(kind)},
                                                           {"count", std::to_string(o.count)}};
  for (const auto& w : warnings) meta.push_back({"warning", w});
  write_text(cfg.out + "/manifest.txt", render_manifest(rc, meta));
  for (const auto& w : warnings) out << "warning: " << w << "\n";
  out << "wrote " << o.count << " " << to_string(kind) << " fields to " << cfg.out << "\n";
  return 0;
}

// ---------------------------------------------------------------- stats

struct StatsOpts {
  std::string snapshots, quantity = "spectrum", part = "real", out;
  int q = 2;
  std::size_t bins = 201;
  double region = kNaN;
};

int cmd_stats(const StatsOpts& o, std::ostream& out) {
  static const std::vector<std::string> known = {"spectrum", "structure",     "skewness",        "flatness",
                                                 "third_order", "gradient_pdf", "gradient_moments"};
  if (std::find(known.begin(), known.end(), o.quantity) == known.end())
    throw ConfigError("unknown stats quantity '" + o.quantity + "'");
  if (o.snapshots.empty()) throw ConfigError("--snapshots is required");
  std::vector<std::string> files;
  std::string hash;
  double region_fraction = 0.2;
  if (fs::is_directory(o.snapshots)) {
    files = list_snapshots(o.snapshots);
    const fs::path man = fs::path(o.snapshots) / "manifest.txt";
    if (fs::exists(man)) {
      const std::string text = read_text(man.string());
      hash = manifest_meta(text, "config_hash");
      region_fraction = parse_config(text).region;
    }
  } else {
    files = {o.snapshots};
  }
  if (files.empty()) throw ConfigError("no snapshots found in '" + o.snapshots + "'");
  if (!std::isnan(o.region)) region_fraction = o.region;
  const HomogeneousRegion region{region_fraction};
  const Part part = parse_part(o.part);

  const Snapshot first = read_snapshot(files.front());
  const Grid grid = first.u.grid();
  std::optional<PeriodogramAccumulator> spec;
  std::optional<IncrementAccumulator> inc;
  std::optional<GradientAccumulator> grad;
  if (o.quantity == "spectrum") spec.emplace(grid);
  else if (o.quantity.rfind("gradient", 0) == 0) grad.emplace(grid, region);
  else inc.emplace(grid, region);
  for (const auto& f : files) {
    const Snapshot s = f == files.front() ? first : read_snapshot(f);
    if (!(s.u.grid() == grid)) throw ConfigError("snapshot '" + f + "' has a different grid");
    if (spec) spec->add(s.u);
    if (inc) inc->add(s.u);
    if (grad) grad->add(s.u);
  }
  if (o.quantity == "gradient_moments") {
    const auto m = grad->moments(part);
    std::ostringstream os;
    os << "part=" << to_string(part) << "\nskewness=" << format_double(m.skewness)
       << "\nskewness_se=" << format_double(m.skewness_se) << "\nexcess_kurtosis=" << format_double(m.excess_kurtosis)
       << "\nexcess_kurtosis_se=" << format_double(m.excess_kurtosis_se) << "\nn=" << m.n << "\n";
    emit(os.str(), o.out, out);
    return 0;
  }
  StatsTable t;
  if (o.quantity == "spectrum") t = spec->table();
  else if (o.quantity == "structure") t = inc->structure_function(o.q);
  else if (o.quantity == "skewness") t = inc->skewness(part);
  else if (o.quantity == "flatness") t = inc->flatness();
  else if (o.quantity == "third_order") t = inc->third_order(part);
  else t = grad->pdf(part, o.bins);
  t.config_hash = hash;
  emit(render_table(t), o.out, out);
  return 0;
}

// ---------------------------------------------------------------- oracle

struct OracleOpts {
  std::string quantity, config, ks, out;
  std::vector<std::string> set;
  double t = std::numeric_limits<double>::infinity();
};

int cmd_oracle(const OracleOpts& o, std::ostream& out) {
  if (o.quantity.empty()) throw ConfigError("--quantity is required");
  const ResolvedConfig rc = resolve(load_run_config(o.config, o.set));
  const PhysParams p = rc.params();
  const bool spectral = o.quantity.find("spectrum") != std::string::npos;
  if (spectral && o.ks.empty()) throw ConfigError("spectral oracles need --k");
  if (o.quantity == "finite_time_spectrum" && std::isinf(o.t)) throw ConfigError("finite_time_spectrum needs --t");
  const std::vector<double> ks = spectral ? parse_ks(o.ks) : std::vector<double>{};
  const auto reports = oracle_by_name(o.quantity, p, ks, o.t);
  std::string text;
  if (spectral) {
    Csv csv;
    csv.comments = {" oracle=" + o.quantity, " method=" + std::string(to_string(reports.front().method))};
    csv.header = {"k", "density", "error_estimate"};
    for (std::size_t i = 0; i < ks.size(); ++i)
      csv.rows.push_back({ks[i], reports[i].value(), reports[i].error_estimate});
    text = render_csv(csv);
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) text += (i ? "\n" : "") + render_report(reports[i]);
  }
  emit(text, o.out, out);
  for (const auto& r : reports)
    if (r.warning) out << "warning: " << r.name << ": " << r.note << "\n";
  return 0;
}

// ---------------------------------------------------------------- report

struct ReportOpts {
  std::string table, config, quantity, out;
  std::vector<std::string> set;
  double lo = kNaN, hi = kNaN, t = kNaN;
};

int cmd_report(const ReportOpts& o, std::ostream& out) {
  if (o.table.empty()) throw ConfigError("--table is required");
  const StatsTable t = read_table(o.table);
  std::string cfg_path = o.config;
  if (cfg_path.empty()) {
    const fs::path man = fs::path(o.table).parent_path() / "manifest.txt";
    if (fs::exists(man)) cfg_path = man.string();
  }
  const ResolvedConfig rc = resolve(load_run_config(cfg_path, o.set));
  const PhysParams p = rc.params();
  const Grid grid = rc.grid();
  const double weight = truncation_factor(rc.cfg.forcing, p.L_tot);
  const double k_nu = p.viscous_wavenumber();

  Csv csv;
  csv.header = {"abscissa", "estimate", "std_error", "n_samples", "oracle", "ratio"};
  std::vector<std::pair<std::string, double>> summary;
  std::vector<double> oracle(t.rows(), kNaN);
  double lo = o.lo, hi = o.hi;
  std::string oracle_name = o.quantity;

  if (t.estimator == "periodogram") {
    if (std::isnan(lo)) lo = 2.0 / p.L;
    if (std::isnan(hi)) hi = std::min(k_nu, grid.size() * grid.dk() / 2.0) / 3.0;
    const bool hamiltonian = rc.cfg.variant == EvolutionVariant::Hamiltonian ||
                             rc.cfg.variant == EvolutionVariant::HamiltonianViscous;
    if (oracle_name.empty())
      oracle_name = hamiltonian ? (p.nu > 0.0 ? "viscous_spectrum" : "finite_time_spectrum") : "stationary_spectrum";
    const double tt = std::isnan(o.t) ? (oracle_name == "finite_time_spectrum" ? rc.t_end
                                                                                : std::numeric_limits<double>::infinity())
                                      : o.t;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double k = t.abscissa[i];
      if (oracle_name == "stationary_spectrum" && p.H > 0.0) oracle[i] = weight * stationary_spectrum(k, p).value();
      else if (oracle_name == "finite_time_spectrum")
        oracle[i] = weight * finite_time_spectrum(tt, k, p, hamiltonian ? Weighting::Hamiltonian : Weighting::Fractional).value();
      else if (oracle_name == "viscous_spectrum")
        oracle[i] = weight * viscous_spectrum(tt, k, p, Weighting::Hamiltonian).value();
      else if (oracle_name == "fractional_viscous_spectrum")
        oracle[i] = weight * viscous_spectrum(tt, k, p, Weighting::Fractional).value();
      else throw ConfigError("report cannot use oracle '" + oracle_name + "' for a periodogram");
    }
  } else if (t.estimator.rfind("structure_function_q", 0) == 0) {
    if (std::isnan(lo) || std::isnan(hi)) {
      const auto w = inertial_window(grid, p.L, k_nu);
      if (std::isnan(lo)) lo = w.first;
      if (std::isnan(hi)) hi = w.second;
    }
    int q = std::stoi(t.estimator.substr(20));
    if (q == 2 && p.H > 0.0) {
      if (oracle_name.empty()) oracle_name = "c_h";
      const double ch = c_H(p).value();
      for (std::size_t i = 0; i < t.rows(); ++i) oracle[i] = weight * ch * std::pow(t.abscissa[i], 2.0 * p.H);
    }
    if (q % 2 == 0) {
      const auto e = scaling_exponent(ExponentKind::MultifractalS2q, q / 2, p);
      summary.push_back({"expected_slope", e.value});
    }
    const PowerLawFit f = fit_power_law(t, lo, hi);
    summary.push_back({"fit_slope", f.slope});
    summary.push_back({"fit_slope_se", f.slope_se});
    summary.push_back({"fit_r2", f.r2});
    summary.push_back({"fit_points", static_cast<double>(f.points)});
  } else if (t.estimator.rfind("skewness", 0) == 0 || t.estimator == "flatness") {
    if (std::isnan(lo)) lo = t.abscissa.empty() ? 0.0 : t.abscissa.front();
    if (std::isnan(hi)) hi = t.abscissa.empty() ? 0.0 : t.abscissa.back();
    const double ref = t.estimator == "flatness" ? 2.0 : 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) oracle[i] = ref;
    if (oracle_name.empty()) oracle_name = t.estimator == "flatness" ? "gaussian_flatness" : "gaussian_skewness";
  } else {
    if (std::isnan(lo)) lo = -std::numeric_limits<double>::infinity();
    if (std::isnan(hi)) hi = std::numeric_limits<double>::infinity();
  }

  double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin, rsum = 0.0, emin = rmin, emax = -rmin;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const double ratio = oracle[i] != 0.0 && !std::isnan(oracle[i]) ? t.estimate[i] / oracle[i] : kNaN;
    csv.rows.push_back(
        {t.abscissa[i], t.estimate[i], t.std_error[i], static_cast<double>(t.n_samples[i]), oracle[i], ratio});
    if (t.abscissa[i] < lo || t.abscissa[i] > hi || std::isnan(t.estimate[i])) continue;
    ++n;
    emin = std::min(emin, t.estimate[i]);
    emax = std::max(emax, t.estimate[i]);
    if (!std::isnan(ratio)) {
      rmin = std::min(rmin, ratio);
      rmax = std::max(rmax, ratio);
      rsum += ratio;
    }
  }
  summary.insert(summary.begin(), {{"window_lo", lo}, {"window_hi", hi}, {"window_rows", static_cast<double>(n)},
                                   {"estimate_min", emin}, {"estimate_max", emax}});
  if (n > 0 && rmax >= rmin) {
    summary.push_back({"ratio_min", rmin});
    summary.push_back({"ratio_max", rmax});
    summary.push_back({"ratio_mean", rsum / static_cast<double>(n)});
  }
  csv.comments = {" estimator=" + t.estimator, " oracle=" + (oracle_name.empty() ? "none" : oracle_name),
                  " truncation_weight=" + format_double(weight)};
  for (const auto& [k, v] : summary) csv.comments.push_back(" " + k + "=" + format_double(v));
  emit(render_csv(csv), o.out, out);
  if (!o.out.empty() && o.out != "-")
    for (const auto& [k, v] : summary) out << k << "=" << format_double(v) << "\n";
  return 0;
}

}  // namespace

std::string render_manifest(const ResolvedConfig& rc, const std::vector<std::pair<std::string, std::string>>& meta) {
  std::string s = render_resolved(rc);
  for (const auto& [k, v] : meta) s += "# " + k + "=" + v + "\n";
  return s;
}

std::string manifest_meta(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  const std::string prefix = "# " + key + "=";
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return std::string(trim(line.substr(prefix.size())));
  return "";
}

RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::string text;
  if (!path.empty()) {
    std::string file = path;
    if (fs::is_directory(path)) file = (fs::path(path) / "manifest.txt").string();
    text = read_text(file);
  }
  for (const auto& o : overrides) {
    if (o.find('=') == std::string::npos) throw ConfigError("override '" + o + "' is not key=value");
    text += "\n" + o;
  }
  return parse_config(text);
}

std::vector<std::string> list_snapshots(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".bin") continue;
    const std::string name = e.path().filename().string();
    if (name.rfind("snap_", 0) == 0 || name.rfind("field_", 0) == 0) out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic cascade model: simulation, synthesis, statistics and reference values", "cspde"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CSPDE_VERSION);

  SimulateOpts so;
  auto* sim = app.add_subcommand("simulate", "integrate the dynamics and write snapshots and a manifest");
  sim->add_option("--config", so.config, "key=value config file or run directory");
  sim->add_option("--seed", so.seed, "master seed")->each([&](const std::string&) { so.seed_given = true; });
  sim->add_option("--out", so.out, "output directory");
  sim->add_option("--variant", so.variant, "hamiltonian | hamiltonian_viscous | linear_fractional | nonlinear");
  sim->add_option("--set", so.set, "extra key=value config entries");
  sim->add_option("--resume", so.resume, "continue from a snapshot file");

  SynthOpts yo;
  auto* syn = app.add_subcommand("synth", "write an ensemble of synthetic fields");
  syn->add_option("--config", yo.config, "key=value config file");
  syn->add_option("--kind", yo.kind, "fgf | log_field | log_field_odd | gmc | gmc_odd | multifractal");
  syn->add_option("--count", yo.count, "ensemble size");
  syn->add_option("--seed", yo.seed, "master seed")->each([&](const std::string&) { yo.seed_given = true; });
  syn->add_option("--out", yo.out, "output directory");
  syn->add_option("--set", yo.set, "extra key=value config entries");

  StatsOpts to;
  auto* st = app.add_subcommand("stats", "estimate statistics over snapshots");
  st->add_option("--snapshots", to.snapshots, "run directory or single snapshot file")->required();
  st->add_option("--quantity", to.quantity,
                 "spectrum | structure | skewness | flatness | third_order | gradient_pdf | gradient_moments");
  st->add_option("--q", to.q, "structure function order");
  st->add_option("--part", to.part, "real | imag");
  st->add_option("--bins", to.bins, "histogram bins");
  st->add_option("--region", to.region, "homogeneous region fraction");
  st->add_option("--out", to.out, "output file (default stdout)");

  OracleOpts oo;
  auto* orc = app.add_subcommand("oracle", "reference values from closed forms and quadrature");
  orc->add_option("--quantity", oo.quantity,
                  "stationary_spectrum | finite_time_spectrum | viscous_spectrum | fractional_viscous_spectrum | "
                  "c_h | misc_constants | truncation_weight | viscous_s_integral | fgf_statics | exponents")
      ->required();
  orc->add_option("--config", oo.config, "key=value config file or run directory");
  orc->add_option("--set", oo.set, "extra key=value config entries");
  orc->add_option("--k", oo.ks, "wavenumbers: a,b,c or lo:hi:n (log spaced)");
  orc->add_option("--t", oo.t, "time for finite-time spectra");
  orc->add_option("--out", oo.out, "output file (default stdout)");

  ReportOpts ro;
  auto* rep = app.add_subcommand("report", "join a statistics table with its reference values");
  rep->add_option("--table", ro.table, "table written by stats")->required();
  rep->add_option("--config", ro.config, "config or run directory (default: manifest next to the table)");
  rep->add_option("--set", ro.set, "extra key=value config entries");
  rep->add_option("--quantity", ro.quantity, "oracle to compare against");
  rep->add_option("--lo", ro.lo, "lower end of the summary window");
  rep->add_option("--hi", ro.hi, "upper end of the summary window");
  rep->add_option("--t", ro.t, "time for finite-time oracles");
  rep->add_option("--out", ro.out, "output file (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << CSPDE_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  try {
    if (*sim) return cmd_simulate(so, out);
    if (*syn) return cmd_synth(yo, out);
    if (*st) return cmd_stats(to, out);
    if (*orc) return cmd_oracle(oo, out);
    if (*rep) return cmd_report(ro, out);
  } catch (const InstabilityError& e) {
    err << "error: instability at t=" << e.time() << " step " << e.step_index() << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace cspde
