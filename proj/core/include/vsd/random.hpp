#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace vsd {

// Seeded generator with platform-independent draws. The standard
// distributions are implementation-defined, so split, SMOTE, and grammar
// sampling go through these helpers to keep outputs byte-stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::size_t uniform_index(std::size_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform01();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// 64-bit FNV-1a; stable content fingerprint for model metadata.
std::uint64_t fnv1a64(std::span<const char> bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace vsd
