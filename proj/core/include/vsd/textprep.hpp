#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vsd {

struct Token {
  std::string surface;  // case-folded word as it appeared
  std::string stem;

  friend bool operator==(const Token&, const Token&) = default;
};

// Lowercases, splits on Unicode whitespace, and strips punctuation from token
// edges. Internal hyphens and apostrophes survive; diacritics are preserved.
std::vector<std::string> tokenize(std::string_view text);

class StopList {
 public:
  StopList() = default;
  explicit StopList(std::set<std::string, std::less<>> words) : words_(std::move(words)) {}

  // One word per line; '#' lines and blank lines are skipped. Words are
  // lowercased on load.
  static StopList parse(std::string_view text);
  static StopList load(const std::filesystem::path& path);
  static StopList defaults();

  bool contains(std::string_view word) const { return words_.find(word) != words_.end(); }
  const std::set<std::string, std::less<>>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }

  friend bool operator==(const StopList&, const StopList&) = default;

 private:
  std::set<std::string, std::less<>> words_;
};

std::vector<std::string> remove_stop_words(const std::vector<std::string>& tokens,
                                           const StopList& stops);

struct StemRule {
  std::string pass;
  std::string suffix;
  std::size_t min_stem_len;  // code points that must remain before the suffix
  std::string replacement;

  friend bool operator==(const StemRule&, const StemRule&) = default;
};

// Ordered suffix-stripping passes. An empty rule set is the identity stemmer.
class StemRules {
 public:
  StemRules() = default;
  // Rules in file order. Passes run in first-appearance order; within a pass
  // suffixes are tried longest first (ties keep file order).
  explicit StemRules(std::vector<StemRule> rules);

  // Line format `<pass>;<suffix>;<min_stem_len>;<replacement>`.
  static StemRules parse(std::string_view text);
  static StemRules load(const std::filesystem::path& path);
  static StemRules defaults();

  const std::vector<StemRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

  std::string stem(std::string_view word) const;

  friend bool operator==(const StemRules& a, const StemRules& b) { return a.rules_ == b.rules_; }

 private:
  std::vector<StemRule> rules_;
  std::vector<std::vector<std::size_t>> passes_;  // indices into rules_, try order
  std::vector<std::size_t> suffix_lengths_;        // code points, parallel to rules_
};

inline std::string stem(std::string_view word, const StemRules& rules) { return rules.stem(word); }

// tokenize -> drop stop words (surface form) -> stem the survivors.
std::vector<Token> preprocess(std::string_view text, const StopList& stops, const StemRules& rules);

// Raw text of the shipped defaults, compiled in from core/data.
std::string_view default_stoplist_text();
std::string_view default_stem_rules_text();

}  // namespace vsd
