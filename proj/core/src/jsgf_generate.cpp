#include <functional>
#include <numeric>

#include "vsd/error.hpp"
#include "vsd/jsgf.hpp"
#include "vsd/random.hpp"

namespace vsd::jsgf {

namespace {

const Expansion& require_rule(const Grammar& g, std::string_view rule) {
  const Expansion* body = g.find(rule);
  if (!body) throw Error(Errc::UnknownRule, "no rule <" + std::string(rule) + "> in grammar");
  return *body;
}

std::string join(const std::vector<std::string_view>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

// Continuation-passing enumeration; a continuation returns false to stop.
class Enumerator {
 public:
  using Cont = std::function<bool()>;

  Enumerator(const Grammar& g, std::size_t limit) : grammar_(g), limit_(limit) {}

  std::vector<std::string> run(const Expansion& root) {
    expand(root, [this] {
      phrases_.push_back(join(words_));
      return phrases_.size() < limit_;
    });
    return std::move(phrases_);
  }

 private:
  bool expand(const Expansion& e, const Cont& k) {
    using Kind = Expansion::Kind;
    switch (e.kind) {
      case Kind::Terminal: {
        words_.push_back(e.text);
        const bool go_on = k();
        words_.pop_back();
        return go_on;
      }
      case Kind::RuleRef:
        return expand(grammar_.rules.at(e.text), k);
      case Kind::Sequence:
        return expand_from(e.children, 0, k);
      case Kind::Alternatives:
        for (const auto& child : e.children) {
          if (!expand(child, k)) return false;
        }
        return true;
      case Kind::Optional:
        if (!k()) return false;
        return expand(e.children.front(), k);
    }
    return true;
  }

  bool expand_from(const std::vector<Expansion>& items, std::size_t index, const Cont& k) {
    if (index == items.size()) return k();
    return expand(items[index], [&, index] { return expand_from(items, index + 1, k); });
  }

  const Grammar& grammar_;
  std::size_t limit_;
  std::vector<std::string_view> words_;
  std::vector<std::string> phrases_;
};

void sample_into(const Grammar& g, const Expansion& e, Rng& rng,
                 std::vector<std::string_view>& words) {
  using Kind = Expansion::Kind;
  switch (e.kind) {
    case Kind::Terminal:
      words.push_back(e.text);
      return;
    case Kind::RuleRef:
      sample_into(g, g.rules.at(e.text), rng, words);
      return;
    case Kind::Sequence:
      for (const auto& child : e.children) sample_into(g, child, rng, words);
      return;
    case Kind::Alternatives: {
      std::size_t pick = e.children.size() - 1;
      if (e.weights.empty()) {
        pick = rng.uniform_index(e.children.size());
      } else {
        const double total = std::accumulate(e.weights.begin(), e.weights.end(), 0.0);
        double target = rng.uniform01() * total;
        for (std::size_t i = 0; i < e.weights.size(); ++i) {
          if (target < e.weights[i]) {
            pick = i;
            break;
          }
          target -= e.weights[i];
        }
      }
      sample_into(g, e.children[pick], rng, words);
      return;
    }
    case Kind::Optional:
      if (rng.uniform01() < 0.5) sample_into(g, e.children.front(), rng, words);
      return;
  }
}

}  // namespace

std::vector<std::string> enumerate_phrases(const Grammar& grammar, std::string_view rule,
                                           std::size_t limit) {
  const Expansion& root = require_rule(grammar, rule);
  if (limit == 0) throw Error(Errc::LimitZero, "enumeration limit must be at least 1");
  return Enumerator(grammar, limit).run(root);
}

std::vector<std::string> sample_phrases(const Grammar& grammar, std::string_view rule,
                                        std::size_t count, std::uint64_t seed) {
  const Expansion& root = require_rule(grammar, rule);
  if (count == 0) throw Error(Errc::LimitZero, "sample count must be at least 1");
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  std::vector<std::string_view> words;
  for (std::size_t i = 0; i < count; ++i) {
    words.clear();
    sample_into(grammar, root, rng, words);
    out.push_back(join(words));
  }
  return out;
}

}  // namespace vsd::jsgf
