#include "cspde/random.hpp"

#include <cmath>

namespace cspde {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// odd multiples of 2^-32 in (-1, 1), never zero
inline double to_symmetric(std::uint32_t v) {
  return static_cast<double>(2 * static_cast<std::uint64_t>(v) + 1) * 0x1.0p-32 - 1.0;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, ctr[0], hi0, lo0);
    mulhilo(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

NoiseStream::NoiseStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t counter)
    : seed_(master_seed), stream_(stream_id), counter_(counter) {
  const std::uint64_t k = splitmix64(splitmix64(master_seed) ^ stream_id);
  key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

void NoiseStream::draw(std::span<Complex> out) {
  draw_at(counter_, out);
  ++counter_;
}

void NoiseStream::draw_at(std::uint64_t counter, std::span<Complex> out) const {
  const auto c_lo = static_cast<std::uint32_t>(counter);
  const auto c_hi = static_cast<std::uint32_t>(counter >> 32);
  // Marsaglia polar method; element i owns the blocks (i, attempt, counter).
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto idx = static_cast<std::uint32_t>(i);
    for (std::uint32_t attempt = 0;; ++attempt) {
      const auto r = philox4x32({idx, attempt, c_lo, c_hi}, key_);
      const double a = to_symmetric(r[0]), b = to_symmetric(r[1]);
      double s = a * a + b * b;
      if (s < 1.0) {
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        out[i] = Complex(a * f, b * f);
        break;
      }
      const double c = to_symmetric(r[2]), d = to_symmetric(r[3]);
      s = c * c + d * d;
      if (s < 1.0) {
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        out[i] = Complex(c * f, d * f);
        break;
      }
    }
  }
}

}  // namespace cspde
