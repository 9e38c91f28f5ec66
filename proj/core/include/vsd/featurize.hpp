#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "vsd/textprep.hpp"

namespace vsd {

using FeatureVector = std::vector<double>;

enum class BowMode { Boolean, Tf, TfIdf };

std::string_view to_string(BowMode mode);
std::optional<BowMode> parse_bow_mode(std::string_view name);

// Term list with document frequencies, built from the training partition.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Validates: terms unique, 1 <= doc_freq[i] <= n_docs.
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq, std::size_t n_docs);

  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::size_t>& doc_freqs() const { return doc_freq_; }
  std::size_t n_docs() const { return n_docs_; }
  std::size_t size() const { return terms_.size(); }

  std::optional<std::size_t> column(std::string_view stem) const;
  std::size_t doc_freq(std::string_view stem) const;
  // ln(N / d(t)) for the term in `column`.
  double idf(std::size_t column) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.terms_ == b.terms_ && a.doc_freq_ == b.doc_freq_ && a.n_docs_ == b.n_docs_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::size_t n_docs_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

// Keeps the `max_terms` stems with the highest total frequency across the
// documents; ties go to the lexicographically smaller stem.
Vocabulary build_vocabulary(std::span<const std::vector<std::string>> stem_docs,
                            std::size_t max_terms);
Vocabulary build_vocabulary(std::span<const std::vector<Token>> docs, std::size_t max_terms);

// Out-of-vocabulary stems are ignored.
FeatureVector bow_vector(std::span<const std::string> stems, const Vocabulary& vocab, BowMode mode);
FeatureVector bow_vector(std::span<const Token> tokens, const Vocabulary& vocab, BowMode mode);

// Pretrained word vectors in word2vec text format.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  std::uint64_t content_hash() const { return content_hash_; }
  void set_content_hash(std::uint64_t h) { content_hash_ = h; }

  // Returns false (and keeps the existing vector) when the word is present.
  bool insert(std::string word, std::span<const double> values);
  std::optional<std::span<const double>> find(std::string_view word) const;

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> rows_;
  std::vector<double> data_;
  std::uint64_t content_hash_ = 0;
};

// Header `<vocab_size> <dim>`, then `word v1 ... vdim` per line. Duplicate
// words keep their first vector.
EmbeddingTable parse_embeddings(std::string_view text);
EmbeddingTable load_embeddings(const std::filesystem::path& path);

struct SentenceEmbedding {
  FeatureVector values;
  bool coverage_warning = false;  // no token was found in the table
};

// Mean of the vectors of in-table surface forms; zero vector when none hit.
SentenceEmbedding embed_sentence(std::span<const Token> tokens, const EmbeddingTable& table);

struct BowFeaturizer {
  BowMode mode = BowMode::Boolean;
  Vocabulary vocab;
};

struct EmbeddingFeaturizer {
  std::string path;  // as recorded in the model; resolved by the caller
  std::size_t dim = 0;
  std::uint64_t content_hash = 0;
  std::shared_ptr<const EmbeddingTable> table;
};

struct Featurized {
  FeatureVector values;
  bool low_signal = false;  // nothing in the sentence reached the feature space
};

// The fitted feature extractor carried alongside a trained model.
class Featurizer {
 public:
  Featurizer() = default;
  explicit Featurizer(BowFeaturizer bow) : impl_(std::move(bow)) {}
  explicit Featurizer(EmbeddingFeaturizer emb) : impl_(std::move(emb)) {}

  bool is_bow() const { return std::holds_alternative<BowFeaturizer>(impl_); }
  const BowFeaturizer* bow() const { return std::get_if<BowFeaturizer>(&impl_); }
  const EmbeddingFeaturizer* embedding() const { return std::get_if<EmbeddingFeaturizer>(&impl_); }

  std::size_t dim() const;
  Featurized apply(std::span<const Token> tokens) const;

 private:
  std::variant<BowFeaturizer, EmbeddingFeaturizer> impl_;
};

}  // namespace vsd
