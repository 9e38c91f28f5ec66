#include "vsd/smote.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vsd/error.hpp"
#include "vsd/random.hpp"

namespace vsd {

std::size_t smote_synthetic_count(std::size_t minority_count, std::size_t majority_count,
                                  double target_ratio) {
  const double target = std::ceil(target_ratio * static_cast<double>(majority_count));
  if (target <= static_cast<double>(minority_count)) return 0;
  return static_cast<std::size_t>(target) - minority_count;
}

namespace {

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return sum;
}

}  // namespace

std::vector<FeatureVector> smote_oversample(std::span<const FeatureVector> minority,
                                            std::size_t majority_count, const SmoteConfig& cfg) {
  if (cfg.k_neighbors < 1) throw Error(Errc::InvalidArgument, "k_neighbors must be >= 1");
  if (!(cfg.target_ratio > 0.0) || !std::isfinite(cfg.target_ratio)) {
    throw Error(Errc::InvalidArgument, "target_ratio must be positive and finite");
  }
  const std::size_t m = minority.size();
  if (m < cfg.k_neighbors + 1) {
    throw Error(Errc::TooFewSamples, "SMOTE needs at least k+1 = " +
                                         std::to_string(cfg.k_neighbors + 1) +
                                         " minority samples, got " + std::to_string(m));
  }
  const std::size_t dim = minority.front().size();
  for (const auto& v : minority) {
    if (v.size() != dim) throw Error(Errc::DimMismatch, "minority vectors differ in dimension");
  }

  const std::size_t needed = smote_synthetic_count(m, majority_count, cfg.target_ratio);
  std::vector<FeatureVector> synthetic;
  if (needed == 0) return synthetic;

  // Exact k-NN for every base sample that will actually be used.
  const std::size_t bases = std::min(needed, m);
  const std::size_t k = cfg.k_neighbors;
  std::vector<std::vector<std::size_t>> neighbours(bases);
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(m - 1);
  for (std::size_t i = 0; i < bases; ++i) {
    dist.clear();
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) dist.emplace_back(squared_distance(minority[i], minority[j]), j);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    neighbours[i].reserve(k);
    for (std::size_t r = 0; r < k; ++r) neighbours[i].push_back(dist[r].second);
  }

  Rng rng(cfg.seed);
  synthetic.reserve(needed);
  for (std::size_t n = 0; n < needed; ++n) {
    const std::size_t i = n % m;
    const auto& x = minority[i];
    const auto& z = minority[neighbours[i][rng.uniform_index(k)]];
    const double u = rng.uniform01();
    FeatureVector s(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      const double lo = std::min(x[c], z[c]);
      const double hi = std::max(x[c], z[c]);
      // Rounding in x + u (z - x) can step past an endpoint by an ulp.
      s[c] = std::clamp(x[c] + u * (z[c] - x[c]), lo, hi);
    }
    synthetic.push_back(std::move(s));
  }
  return synthetic;
}

}  // namespace vsd
