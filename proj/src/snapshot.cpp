#include "cspde/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "cspde/errors.hpp"

namespace cspde {

namespace {

template <class T>
void put(std::string& buf, T v) {
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  buf.append(b, sizeof(T));
}

template <class T>
T get(const std::string& buf, std::size_t& pos) {
  char b[sizeof(T)];
  std::memcpy(b, buf.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  pos += sizeof(T);
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

constexpr char kMagic[6] = {'C', 'S', 'P', 'D', 'E', '1'};

}  // namespace

void write_snapshot(const Snapshot& s, const std::string& path) {
  require_space(s.u, Space::Spectral, "write_snapshot");
  const std::size_t n = s.u.size();
  std::string buf;
  buf.reserve(kSnapshotHeaderBytes + 16 * n);
  buf.append(kMagic, 6);
  put<std::uint32_t>(buf, s.version);
  put<std::uint64_t>(buf, n);
  put<double>(buf, s.u.grid().period());
  put<double>(buf, s.t);
  put<double>(buf, s.dt);
  for (double v : {s.params.H, s.params.gamma, s.params.nu, s.params.c, s.params.L}) put<double>(buf, v);
  for (const Complex& z : s.u.values()) {
    put<double>(buf, z.real());
    put<double>(buf, z.imag());
  }
  const std::string tmp = path + ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f) throw std::runtime_error("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open snapshot '" + path + "'");
  const std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (buf.size() < 6 || std::memcmp(buf.data(), kMagic, 6) != 0) throw FormatError(path + ": bad magic");
  if (buf.size() < kSnapshotHeaderBytes) throw FormatError(path + ": truncated header");
  std::size_t pos = 6;
  const auto version = get<std::uint32_t>(buf, pos);
  if (version != kSnapshotVersion)
    throw FormatError(path + ": unsupported version " + std::to_string(version));
  const auto n = get<std::uint64_t>(buf, pos);
  const double l_tot = get<double>(buf, pos);
  Snapshot s{version, 0.0, 0.0, {}, Field::zeros(Grid(2, 1.0), Space::Spectral)};
  s.t = get<double>(buf, pos);
  s.dt = get<double>(buf, pos);
  s.params.H = get<double>(buf, pos);
  s.params.gamma = get<double>(buf, pos);
  s.params.nu = get<double>(buf, pos);
  s.params.c = get<double>(buf, pos);
  s.params.L = get<double>(buf, pos);
  s.params.L_tot = l_tot;
  const std::size_t payload = buf.size() - kSnapshotHeaderBytes;
  if (n == 0 || n > payload / 16 || payload != 16 * n)
    throw FormatError(path + ": payload is " + std::to_string(payload) +
                      " bytes, expected 16 x " + std::to_string(n));
  Grid grid = [&] {
    try {
      return Grid(n, l_tot);
    } catch (const ConfigError& e) {
      throw FormatError(path + ": " + e.what());
    }
  }();
  std::vector<Complex> v(n);
  for (auto& z : v) {
    const double re = get<double>(buf, pos);
    const double im = get<double>(buf, pos);
    z = Complex(re, im);
  }
  s.u = Field(grid, Space::Spectral, std::move(v));
  return s;
}

Snapshot make_snapshot(const SimState& s, double dt, const PhysParams& p) {
  return Snapshot{kSnapshotVersion, s.t, dt, p, s.u};
}

SimState resume_state(const Snapshot& s, const ResolvedConfig& rc) {
  if (!(s.u.grid() == rc.grid())) throw ConfigError("snapshot grid does not match the config");
  if (s.dt != rc.dt) throw ConfigError("snapshot dt differs from the config dt");
  const PhysParams p = rc.params();
  if (s.params.H != p.H || s.params.gamma != p.gamma || s.params.nu != p.nu || s.params.c != p.c ||
      s.params.L != p.L)
    throw ConfigError("snapshot parameters differ from the config");
  const double steps = s.t / s.dt;
  const auto step = static_cast<std::uint64_t>(std::llround(steps));
  return SimState{s.t, s.u, step, NoiseStream(rc.cfg.seed, rc.cfg.stream, step)};
}

std::string snapshot_name(std::uint64_t index) {
  char b[32];
  std::snprintf(b, sizeof b, "snap_%06llu.bin", static_cast<unsigned long long>(index));
  return b;
}

}  // namespace cspde
