#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vsd {

// Violent is the positive class everywhere: metrics, SMOTE minority default,
// and the +1 side of the SVM.
enum class Label { Violent, Benign };

std::string_view to_string(Label label);
// Case-insensitive; returns false for anything other than violent/benign.
bool parse_label(std::string_view word, Label& out);

struct LabeledSentence {
  std::string text;
  Label label;

  friend bool operator==(const LabeledSentence&, const LabeledSentence&) = default;
};

struct LabelCounts {
  std::size_t violent = 0;
  std::size_t benign = 0;

  std::size_t of(Label label) const { return label == Label::Violent ? violent : benign; }
  std::size_t total() const { return violent + benign; }
  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

// Ordered, immutable collection of labeled sentences. Construction validates
// each record (non-empty after trimming, no line breaks).
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<LabeledSentence> sentences);

  const std::vector<LabeledSentence>& sentences() const { return sentences_; }
  const LabelCounts& counts() const { return counts_; }
  std::size_t size() const { return sentences_.size(); }
  bool empty() const { return sentences_.empty(); }
  const LabeledSentence& operator[](std::size_t i) const { return sentences_[i]; }
  auto begin() const { return sentences_.begin(); }
  auto end() const { return sentences_.end(); }

  // Drops repeated (label, text) records, keeping first occurrences.
  Corpus deduplicated() const;

  // Fingerprint of labels and texts in order.
  std::uint64_t content_hash() const;

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.sentences_ == b.sentences_; }

 private:
  std::vector<LabeledSentence> sentences_;
  LabelCounts counts_;
};

Corpus parse_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);

// `<label>\t<text>\n` per sentence, labels in lowercase.
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

struct SplitSpec {
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
};

struct CorpusSplit {
  Corpus train;
  Corpus test;
};

// Per class: floor(train_fraction * n) sentences (at least one) chosen by a
// seeded shuffle go to train, the rest to test. Both partitions keep the
// original corpus order.
CorpusSplit stratified_split(const Corpus& corpus, const SplitSpec& spec);

}  // namespace vsd
