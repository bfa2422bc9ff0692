#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace unidec {

// Philox4x32-10 block function: counter + key -> 128 random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Counter-based stream keyed by (seed, stream). Every draw is a pure function
// of (seed, stream, draw index), so streams can be consumed by any thread in
// any order. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform double in [0, 1).
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

// Deterministic 64-bit hash of a seed and a list of coordinates, used to
// derive independent seeds for sweep cells and optimizer arms.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> coords);

}  // namespace unidec
