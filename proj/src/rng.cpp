#include "treesearch/rng.hpp"

#include <stdexcept>

namespace treesearch {

std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  // m = 2^64 mod n; reject the top m values so every residue is equally likely.
  const std::uint64_t m =
      (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  std::uint64_t v = next();
  if (m != 0) {
    const std::uint64_t threshold = 0 - m;  // wraps to 2^64 - m
    while (v >= threshold) v = next();
  }
  return v % n;
}

}  // namespace treesearch
