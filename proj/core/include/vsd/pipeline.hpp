#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vsd/corpus.hpp"
#include "vsd/eval.hpp"
#include "vsd/featurize.hpp"
#include "vsd/model_io.hpp"
#include "vsd/smote.hpp"
#include "vsd/svm.hpp"
#include "vsd/textprep.hpp"

namespace vsd {

struct BowOptions {
  BowMode mode = BowMode::Boolean;
  std::size_t max_terms = 1000;
};

struct EmbeddingOptions {
  std::filesystem::path path;
  std::shared_ptr<const EmbeddingTable> table;  // loaded from `path` on first use when null
};

struct PipelineConfig {
  std::variant<BowOptions, EmbeddingOptions> featurizer = BowOptions{};
  SvmConfig svm;
  // When set, the kernel gamma becomes 1 / feature_dim once the featurizer is fitted.
  bool auto_gamma = false;
  std::optional<SmoteConfig> smote;
  SplitSpec split;
  StopList stops = StopList::defaults();
  StemRules stem_rules = StemRules::defaults();
  // Recorded in the model. Empty: SOURCE_DATE_EPOCH when set, else today (UTC).
  std::string date;

  // Bag-of-words + RBF(gamma 0.1), C = 10, no SMOTE.
  static PipelineConfig bow_rbf();
  // Averaged embeddings + poly(degree 4, coef0 1, gamma 1/dim), C = 50, SMOTE k = 5.
  static PipelineConfig embedding_poly(std::filesystem::path embeddings);
};

struct TrainingSet {
  std::vector<FeatureVector> x;
  std::vector<int> y;
  std::size_t n_synthetic = 0;
};

// Fits the featurizer on the training partition (vocabulary, or embedding table).
Featurizer fit_featurizer(const PipelineConfig& cfg, std::span<const std::vector<Token>> docs);

// Featurizes `train`, then appends SMOTE samples for the smaller class when
// configured.
TrainingSet build_training_set(const Featurizer& featurizer,
                               std::span<const std::vector<Token>> docs,
                               std::span<const Label> labels,
                               const std::optional<SmoteConfig>& smote);

// Fits featurizer and SVM on `train` only.
TrainedModel fit_model(const Corpus& train, const PipelineConfig& cfg);

struct TrainOutcome {
  TrainedModel model;
  EvalReport report;
  CorpusSplit split;
};

// split -> preprocess -> fit featurizer -> SMOTE -> SVM -> evaluate on test.
TrainOutcome train_pipeline(const Corpus& corpus, const PipelineConfig& cfg);

struct Classification {
  Label label;
  double score;     // SVM decision value
  bool low_signal;  // no token reached the feature space
};

Classification classify(const TrainedModel& model, std::string_view text);

// Key/value summary of the configuration, echoed into evaluation reports.
std::map<std::string, std::string> describe(const PipelineConfig& cfg);

std::string resolve_training_date(const std::string& configured);

}  // namespace vsd
