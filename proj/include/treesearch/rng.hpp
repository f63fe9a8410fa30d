#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace treesearch {

// splitmix64 finalizer; used for seed derivation and per-state hashing.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Order-sensitive combine, suitable for chaining heterogeneous key parts.
constexpr std::uint64_t mix_seed(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

// FNV-1a, 64 bit.
std::uint64_t hash_string(std::string_view s);

// Deterministic random stream. mt19937_64 has a standard-fixed output
// sequence, and all derived draws below avoid std::*_distribution so the
// stream is reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Exactly uniform integer in [0, n); rejection sampling, n >= 1.
  std::uint64_t below(std::uint64_t n);

  // Double in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) { return lo + (hi - lo) * real01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace treesearch
