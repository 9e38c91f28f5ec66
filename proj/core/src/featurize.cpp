#include "vsd/featurize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "vsd/error.hpp"
#include "vsd/random.hpp"

namespace vsd {

std::string_view to_string(BowMode mode) {
  switch (mode) {
    case BowMode::Boolean: return "boolean";
    case BowMode::Tf: return "tf";
    case BowMode::TfIdf: return "tfidf";
  }
  return "boolean";
}

std::optional<BowMode> parse_bow_mode(std::string_view name) {
  if (name == "boolean") return BowMode::Boolean;
  if (name == "tf") return BowMode::Tf;
  if (name == "tfidf" || name == "tf-idf") return BowMode::TfIdf;
  return std::nullopt;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
                       std::size_t n_docs)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)), n_docs_(n_docs) {
  if (terms_.size() != doc_freq_.size()) {
    throw Error(Errc::InvalidArgument, "vocabulary terms and doc_freq differ in length");
  }
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], i).second) {
      throw Error(Errc::InvalidArgument, "duplicate vocabulary term '" + terms_[i] + "'");
    }
    if (doc_freq_[i] < 1 || doc_freq_[i] > n_docs_) {
      throw Error(Errc::InvalidArgument, "doc_freq out of range for '" + terms_[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::column(std::string_view stem) const {
  const auto it = index_.find(std::string(stem));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::doc_freq(std::string_view stem) const {
  const auto col = column(stem);
  return col ? doc_freq_[*col] : 0;
}

double Vocabulary::idf(std::size_t column) const {
  return std::log(static_cast<double>(n_docs_) / static_cast<double>(doc_freq_[column]));
}

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> stem_docs,
                            std::size_t max_terms) {
  if (stem_docs.empty()) throw Error(Errc::EmptyTrainingSet, "no training documents");
  if (max_terms < 1) throw Error(Errc::InvalidArgument, "max_terms must be >= 1");

  std::map<std::string, std::pair<std::size_t, std::size_t>> stats;  // total, doc count
  for (const auto& doc : stem_docs) {
    std::unordered_set<std::string_view> seen;
    for (const auto& stem : doc) {
      auto& entry = stats[stem];
      ++entry.first;
      if (seen.insert(stem).second) ++entry.second;
    }
  }

  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> ranked(stats.begin(),
                                                                                  stats.end());
  // `stats` is already lexicographic, so a stable sort on frequency keeps ties in order.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second.first > b.second.first; });
  if (ranked.size() > max_terms) ranked.resize(max_terms);

  std::vector<std::string> terms;
  std::vector<std::size_t> doc_freq;
  terms.reserve(ranked.size());
  doc_freq.reserve(ranked.size());
  for (auto& [term, counts] : ranked) {
    terms.push_back(term);
    doc_freq.push_back(counts.second);
  }
  return Vocabulary(std::move(terms), std::move(doc_freq), stem_docs.size());
}

Vocabulary build_vocabulary(std::span<const std::vector<Token>> docs, std::size_t max_terms) {
  std::vector<std::vector<std::string>> stems;
  stems.reserve(docs.size());
  for (const auto& doc : docs) {
    auto& out = stems.emplace_back();
    out.reserve(doc.size());
    for (const auto& t : doc) out.push_back(t.stem);
  }
  return build_vocabulary(std::span<const std::vector<std::string>>(stems), max_terms);
}

FeatureVector bow_vector(std::span<const std::string> stems, const Vocabulary& vocab,
                         BowMode mode) {
  FeatureVector counts(vocab.size(), 0.0);
  for (const auto& stem : stems) {
    if (const auto col = vocab.column(stem)) counts[*col] += 1.0;
  }
  switch (mode) {
    case BowMode::Boolean:
      for (double& v : counts) v = v > 0.0 ? 1.0 : 0.0;
      break;
    case BowMode::Tf:
      break;
    case BowMode::TfIdf:
      for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] > 0.0) counts[j] *= vocab.idf(j);
      }
      break;
  }
  return counts;
}

FeatureVector bow_vector(std::span<const Token> tokens, const Vocabulary& vocab, BowMode mode) {
  std::vector<std::string> stems;
  stems.reserve(tokens.size());
  for (const auto& t : tokens) stems.push_back(t.stem);
  return bow_vector(std::span<const std::string>(stems), vocab, mode);
}

bool EmbeddingTable::insert(std::string word, std::span<const double> values) {
  if (values.size() != dim_) {
    throw Error(Errc::DimensionMismatch, "vector for '" + word + "' has " +
                                             std::to_string(values.size()) + " values, expected " +
                                             std::to_string(dim_));
  }
  const auto [it, inserted] = rows_.emplace(std::move(word), rows_.size());
  if (!inserted) return false;
  data_.insert(data_.end(), values.begin(), values.end());
  return true;
}

std::optional<std::span<const double>> EmbeddingTable::find(std::string_view word) const {
  const auto it = rows_.find(std::string(word));
  if (it == rows_.end()) return std::nullopt;
  return std::span<const double>(data_.data() + it->second * dim_, dim_);
}

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingTable parse_embeddings(std::string_view text) {
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view& line) {
    if (text.empty()) return false;
    const auto nl = text.find('\n');
    line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line)) throw Error(Errc::BadHeader, "empty embeddings file", 1);
  const auto header = split_spaces(line);
  std::size_t declared = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !parse_number(header[0], declared) || !parse_number(header[1], dim) ||
      dim == 0) {
    throw Error(Errc::BadHeader, "expected '<vocab_size> <dim>'", 1);
  }

  EmbeddingTable table(dim);
  std::vector<double> values(dim);
  while (next_line(line)) {
    const auto fields = split_spaces(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw Error(Errc::DimensionMismatch,
                  "expected " + std::to_string(dim) + " values, found " +
                      std::to_string(fields.size() - 1),
                  line_no);
    }
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_number(fields[k + 1], values[k]) || !std::isfinite(values[k])) {
        throw Error(Errc::DimensionMismatch, "non-numeric or non-finite component", line_no);
      }
    }
    table.insert(std::string(fields[0]), values);
  }
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open embeddings file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  EmbeddingTable table = parse_embeddings(text);
  table.set_content_hash(fnv1a64(std::span<const char>(text.data(), text.size())));
  return table;
}

SentenceEmbedding embed_sentence(std::span<const Token> tokens, const EmbeddingTable& table) {
  SentenceEmbedding out;
  out.values.assign(table.dim(), 0.0);
  // Summation runs in sorted word order so the result is bitwise independent
  // of token order.
  std::vector<std::string_view> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) words.push_back(t.surface);
  std::sort(words.begin(), words.end());
  std::size_t hits = 0;
  for (const auto word : words) {
    const auto vec = table.find(word);
    if (!vec) continue;
    for (std::size_t k = 0; k < vec->size(); ++k) out.values[k] += (*vec)[k];
    ++hits;
  }
  if (hits == 0) {
    out.coverage_warning = true;
    return out;
  }
  for (double& v : out.values) v /= static_cast<double>(hits);
  return out;
}

std::size_t Featurizer::dim() const {
  if (const auto* b = bow()) return b->vocab.size();
  return std::get<EmbeddingFeaturizer>(impl_).dim;
}

Featurized Featurizer::apply(std::span<const Token> tokens) const {
  if (const auto* b = bow()) {
    Featurized out{bow_vector(tokens, b->vocab, b->mode), false};
    out.low_signal = std::all_of(out.values.begin(), out.values.end(),
                                 [](double v) { return v == 0.0; });
    return out;
  }
  const auto& e = std::get<EmbeddingFeaturizer>(impl_);
  if (!e.table) throw Error(Errc::FeaturizerMismatch, "embedding table not loaded");
  auto emb = embed_sentence(tokens, *e.table);
  return {std::move(emb.values), emb.coverage_warning};
}

}  // namespace vsd
