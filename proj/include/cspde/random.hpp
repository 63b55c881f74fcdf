#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "cspde/grid.hpp"

namespace cspde {

// Philox4x32 with 10 rounds.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

// Counter-based Gaussian source. Draw number `counter` is a pure function of
// (master_seed, stream_id, counter); each call to draw() consumes one counter value.
class NoiseStream {
 public:
  NoiseStream() = default;
  NoiseStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t counter = 0);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }
  std::uint64_t counter() const { return counter_; }
  void set_counter(std::uint64_t c) { counter_ = c; }

  // Fills `out` with complex normals whose real and imaginary parts are
  // independent N(0,1), then advances the counter.
  void draw(std::span<Complex> out);
  // Same values draw() would give at the given counter, without advancing.
  void draw_at(std::uint64_t counter, std::span<Complex> out) const;

  bool operator==(const NoiseStream& o) const {
    return seed_ == o.seed_ && stream_ == o.stream_ && counter_ == o.counter_;
  }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 2> key_{};
};

}  // namespace cspde
