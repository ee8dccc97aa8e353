#pragma once

#include <cstdint>
#include <random>

namespace wirehead {

// Seedable generator with platform-independent draws. The engine is the
// standard-mandated mt19937_64; the bounded and real draws are implemented
// here because the std distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool operator==(const Rng&) const = default;

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Counter-based seed derivation:
//   derive_seed(m, r, s) = splitmix64(splitmix64(m ^ splitmix64(r + 1)) + s)
// Distinct (repeat, stream) pairs give distinct, decorrelated seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t repeat, std::uint64_t stream);

}  // namespace wirehead
