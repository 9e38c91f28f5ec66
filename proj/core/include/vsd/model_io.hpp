#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "vsd/featurize.hpp"
#include "vsd/svm.hpp"
#include "vsd/textprep.hpp"

namespace vsd {

inline constexpr int kModelFormatVersion = 1;

struct TrainingMetadata {
  std::uint64_t seed = 0;
  std::string date;         // UTC, YYYY-MM-DD
  std::string corpus_hash;  // hex FNV-1a of the full corpus
  double train_fraction = 0.7;
  std::size_t n_train = 0;
  std::size_t n_synthetic = 0;  // SMOTE samples added to the training set

  friend bool operator==(const TrainingMetadata&, const TrainingMetadata&) = default;
};

// Everything needed to classify raw text: preprocessing resources, the fitted
// featurizer, and the SVM.
struct TrainedModel {
  StopList stops;
  StemRules stem_rules;
  Featurizer featurizer;
  SvmModel svm;
  TrainingMetadata metadata;
};

struct ModelLoadOptions {
  // Replaces the embeddings path recorded in the model.
  std::optional<std::filesystem::path> embeddings_path;
  // Relative embedding paths are tried against this directory when they do
  // not resolve from the working directory. load_model sets it to the model's
  // directory when empty.
  std::filesystem::path base_dir;
  // When false, embedding models load without their table (for inspection).
  bool load_embeddings = true;
};

// Compact JSON document; identical models serialize to identical bytes.
std::string serialize_model(const TrainedModel& model);
TrainedModel parse_model(std::string_view text, const ModelLoadOptions& options = {});

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path, ModelLoadOptions options = {});

std::string to_hex(std::uint64_t value);

}  // namespace vsd
