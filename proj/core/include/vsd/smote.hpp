#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vsd/featurize.hpp"

namespace vsd {

struct SmoteConfig {
  std::size_t k_neighbors = 5;
  double target_ratio = 1.0;  // minority target as a multiple of the majority count
  std::uint64_t seed = 0;
};

// Number of synthetic samples SMOTE will produce:
// max(0, ceil(target_ratio * majority_count) - minority_count).
std::size_t smote_synthetic_count(std::size_t minority_count, std::size_t majority_count,
                                  double target_ratio);

// Synthetic minority oversampling. Base samples are visited round-robin in
// index order; for each, one of its k nearest minority neighbours (Euclidean,
// ties by index) and an interpolation factor u in [0, 1) are drawn from the
// seeded generator, giving s = x + u (z - x). Returns only the synthetic
// vectors.
std::vector<FeatureVector> smote_oversample(std::span<const FeatureVector> minority,
                                            std::size_t majority_count, const SmoteConfig& cfg);

}  // namespace vsd
