#include "vsd/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <span>

#include "vsd/error.hpp"
#include "vsd/random.hpp"
#include "vsd/utf8.hpp"

namespace vsd {

std::string_view to_string(Label label) {
  return label == Label::Violent ? "violent" : "benign";
}

bool parse_label(std::string_view word, Label& out) {
  std::string lower;
  lower.reserve(word.size());
  for (char c : word) {
    lower.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c);
  }
  if (lower == "violent") {
    out = Label::Violent;
    return true;
  }
  if (lower == "benign") {
    out = Label::Benign;
    return true;
  }
  return false;
}

Corpus::Corpus(std::vector<LabeledSentence> sentences) : sentences_(std::move(sentences)) {
  for (const auto& s : sentences_) {
    if (s.text.find_first_of("\r\n") != std::string::npos) {
      throw Error(Errc::InvalidArgument, "sentence contains a line break: " + s.text);
    }
    if (utf8::trim(s.text).empty()) {
      throw Error(Errc::InvalidArgument, "sentence is empty after trimming");
    }
    if (s.label == Label::Violent) ++counts_.violent;
    else ++counts_.benign;
  }
}

Corpus Corpus::deduplicated() const {
  std::set<std::pair<Label, std::string_view>> seen;
  std::vector<LabeledSentence> kept;
  for (const auto& s : sentences_) {
    if (seen.emplace(s.label, s.text).second) kept.push_back(s);
  }
  return Corpus(std::move(kept));
}

std::uint64_t Corpus::content_hash() const {
  std::uint64_t h = fnv1a64({});
  for (const auto& s : sentences_) {
    const auto label = to_string(s.label);
    h = fnv1a64(std::span<const char>(label.data(), label.size()), h);
    h = fnv1a64(std::span<const char>("\t", 1), h);
    h = fnv1a64(std::span<const char>(s.text.data(), s.text.size()), h);
    h = fnv1a64(std::span<const char>("\n", 1), h);
  }
  return h;
}

Corpus parse_corpus(std::istream& in) {
  std::vector<LabeledSentence> sentences;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(Errc::MalformedRecord, "missing tab separator", line_no);
    }
    Label label;
    if (!parse_label(std::string_view(line).substr(0, tab), label)) {
      throw Error(Errc::MalformedRecord, "unknown label '" + line.substr(0, tab) + "'", line_no);
    }
    std::string text = line.substr(tab + 1);
    if (utf8::trim(text).empty()) {
      throw Error(Errc::MalformedRecord, "empty sentence text", line_no);
    }
    sentences.push_back({std::move(text), label});
  }
  if (in.bad()) throw Error(Errc::Io, "read failure");
  return Corpus(std::move(sentences));
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open corpus file " + path.string());
  return parse_corpus(in);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& s : corpus) out << to_string(s.label) << '\t' << s.text << '\n';
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write corpus file " + path.string());
  write_corpus(out, corpus);
  if (!out) throw Error(Errc::Io, "write failure on " + path.string());
}

CorpusSplit stratified_split(const Corpus& corpus, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw Error(Errc::InvalidArgument, "train_fraction must lie in (0, 1)");
  }
  const auto& counts = corpus.counts();
  if (counts.violent < 2 || counts.benign < 2) {
    throw Error(Errc::ClassTooSmall, "each class needs at least 2 sentences (violent=" +
                                         std::to_string(counts.violent) +
                                         ", benign=" + std::to_string(counts.benign) + ")");
  }

  std::vector<bool> in_train(corpus.size(), false);
  Rng rng(spec.seed);
  for (Label label : {Label::Violent, Label::Benign}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].label == label) members.push_back(i);
    }
    auto take = static_cast<std::size_t>(
        std::floor(spec.train_fraction * static_cast<double>(members.size())));
    take = std::max<std::size_t>(take, 1);
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t k = 0; k < take; ++k) in_train[members[k]] = true;
  }

  std::vector<LabeledSentence> train;
  std::vector<LabeledSentence> test;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (in_train[i] ? train : test).push_back(corpus[i]);
  }
  return {Corpus(std::move(train)), Corpus(std::move(test))};
}

}  // namespace vsd
