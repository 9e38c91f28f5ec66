#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vsd/corpus.hpp"
#include "vsd/pipeline.hpp"

namespace vsd {

struct Fold {
  Corpus train;
  Corpus validation;
};

// Seeded stratified k-fold partition: each class is shuffled and dealt
// round-robin into k folds. Throws ClassTooSmall when a class has fewer than
// k members.
std::vector<Fold> stratified_folds(const Corpus& corpus, std::size_t k, std::uint64_t seed);

struct GridSearchConfig {
  PipelineConfig base;
  std::vector<double> costs;
  std::vector<double> gammas;  // ignored for the linear kernel
  std::size_t folds = 5;
};

struct GridCell {
  double cost = 0.0;
  double gamma = 0.0;  // 0: auto (1 / feature_dim) or unused
  std::vector<double> fold_f1;
  double mean_f1 = 0.0;
};

struct GridSearchResult {
  std::vector<GridCell> cells;  // ascending by (cost, gamma)
  GridCell best;
  bool uses_gamma = true;  // false for the linear kernel
};

// Cross-validates every (C, gamma) pair on `train`; best is the highest mean
// positive-class F1, ties going to the smaller C, then the smaller gamma.
GridSearchResult grid_search(const Corpus& train, const GridSearchConfig& cfg);

std::string render_grid(const GridSearchResult& result);

}  // namespace vsd
