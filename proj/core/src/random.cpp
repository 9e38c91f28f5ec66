#include "vsd/random.hpp"

#include <limits>

#include "vsd/error.hpp"

namespace vsd {

std::size_t Rng::uniform_index(std::size_t bound) {
  if (bound == 0) throw Error(Errc::InvalidArgument, "uniform_index bound must be positive");
  const auto b = static_cast<std::uint64_t>(bound);
  // Rejection sampling on the largest multiple of bound.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % b);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t fnv1a64(std::span<const char> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace vsd
