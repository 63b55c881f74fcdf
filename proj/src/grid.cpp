#include "cspde/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace cspde {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Plans use FFTW_ESTIMATE so the chosen algorithm, and therefore the
// rounding, is the same in every process. Buffers are owned per thread.
class Engine {
 public:
  explicit Engine(std::size_t n) : n_(n) {
    buf_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* b = reinterpret_cast<fftw_complex*>(buf_);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Engine() {
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(fwd_);
      fftw_destroy_plan(inv_);
    }
    fftw_free(buf_);
  }
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  void run(bool forward, double scale, const Complex* in, Complex* out) {
    const std::size_t half = n_ / 2;
    // lattice slot j holds signed index j - n/2 + 1, natural slot is that index mod n
    const std::size_t shift = half - 1;
    for (std::size_t a = 0; a < n_; ++a) {
      std::size_t j = a + shift;
      if (j >= n_) j -= n_;
      buf_[a] = in[j];
    }
    fftw_execute(forward ? fwd_ : inv_);
    for (std::size_t a = 0; a < n_; ++a) {
      std::size_t j = a + shift;
      if (j >= n_) j -= n_;
      out[j] = buf_[a] * scale;
    }
  }

 private:
  std::size_t n_;
  Complex* buf_;
  fftw_plan fwd_;
  fftw_plan inv_;
};

Engine& engine(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Engine>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Engine>(n)).first;
  return *it->second;
}

void check_even(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw ContractError("lattice transform needs an even size, got " + std::to_string(n));
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Grid::Grid(std::size_t n, double l_tot) : n_(n), l_tot_(l_tot) {
  if (!is_power_of_two(n) || n < 2) throw ConfigError("N must be a power of two >= 2, got " + std::to_string(n));
  if (!(l_tot > 0.0) || !std::isfinite(l_tot)) throw ConfigError("L_tot must be positive and finite");
}

std::size_t Grid::slot(std::int64_t m) const {
  const auto n = static_cast<std::int64_t>(n_);
  std::int64_t j = (m + n / 2 - 1) % n;
  if (j < 0) j += n;
  return static_cast<std::size_t>(j);
}

std::vector<double> Grid::x_lattice() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> Grid::k_lattice() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = k(j);
  return out;
}

const char* to_string(Space s) { return s == Space::Physical ? "physical" : "spectral"; }

Field::Field(const Grid& grid, Space space, std::vector<Complex> values)
    : grid_(grid), space_(space), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw ContractError("field length " + std::to_string(values_.size()) + " does not match grid size " +
                        std::to_string(grid_.size()));
}

Field Field::zeros(const Grid& grid, Space space) {
  return Field(grid, space, std::vector<Complex>(grid.size()));
}

void require_space(const Field& u, Space expected, const char* op) {
  if (u.space() != expected)
    throw ContractError(std::string(op) + ": expected a " + to_string(expected) + " field, got " +
                        to_string(u.space()));
}

void require_same_grid(const Field& a, const Field& b, const char* op) {
  if (!(a.grid() == b.grid())) throw ContractError(std::string(op) + ": fields live on different grids");
}

void lattice_forward(std::size_t n, double scale, const Complex* in, Complex* out) {
  check_even(n);
  engine(n).run(true, scale, in, out);
}

void lattice_inverse(std::size_t n, double scale, const Complex* in, Complex* out) {
  check_even(n);
  engine(n).run(false, scale, in, out);
}

Field forward_transform(const Field& u) {
  require_space(u, Space::Physical, "forward_transform");
  std::vector<Complex> out(u.size());
  lattice_forward(u.size(), u.grid().dx(), u.values().data(), out.data());
  return Field(u.grid(), Space::Spectral, std::move(out));
}

Field inverse_transform(const Field& u_hat) {
  require_space(u_hat, Space::Spectral, "inverse_transform");
  std::vector<Complex> out(u_hat.size());
  lattice_inverse(u_hat.size(), u_hat.grid().dk(), u_hat.values().data(), out.data());
  return Field(u_hat.grid(), Space::Physical, std::move(out));
}

}  // namespace cspde
