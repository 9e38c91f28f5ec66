#include "vsd/textprep.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "vsd/error.hpp"
#include "vsd/utf8.hpp"

namespace vsd {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, line_no);
  }
}

bool ends_with(std::string_view word, std::string_view suffix) {
  return word.size() >= suffix.size() && word.substr(word.size() - suffix.size()) == suffix;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const auto cps = utf8::decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && utf8::is_space(cps[i].value)) ++i;
    std::size_t j = i;
    while (j < cps.size() && !utf8::is_space(cps[j].value)) ++j;
    // [i, j) is one whitespace-delimited chunk; trim punctuation at both edges.
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && utf8::is_punct(cps[b].value)) ++b;
    while (e > b && utf8::is_punct(cps[e - 1].value)) --e;
    if (b < e) {
      std::string token;
      for (std::size_t k = b; k < e; ++k) utf8::append(token, utf8::to_lower(cps[k].value));
      tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

StopList StopList::parse(std::string_view text) {
  std::set<std::string, std::less<>> words;
  for_each_line(text, [&](std::string_view line, std::size_t) {
    line = utf8::trim(line);
    if (line.empty() || line.front() == '#') return;
    words.insert(utf8::to_lower(line));
  });
  return StopList(std::move(words));
}

StopList StopList::load(const std::filesystem::path& path) { return parse(read_file(path)); }

StopList StopList::defaults() { return parse(default_stoplist_text()); }

std::vector<std::string> remove_stop_words(const std::vector<std::string>& tokens,
                                           const StopList& stops) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stops.contains(t)) kept.push_back(t);
  }
  return kept;
}

StemRules::StemRules(std::vector<StemRule> rules) : rules_(std::move(rules)) {
  std::vector<std::string> pass_names;
  suffix_lengths_.reserve(rules_.size());
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    if (r.suffix.empty()) throw Error(Errc::InvalidArgument, "stem rule with empty suffix");
    if (r.min_stem_len < 1) {
      throw Error(Errc::InvalidArgument, "stem rule '" + r.suffix + "' needs min_stem_len >= 1");
    }
    const std::size_t suffix_len = utf8::length(r.suffix);
    if (utf8::length(r.replacement) > suffix_len) {
      throw Error(Errc::InvalidArgument,
                  "stem rule '" + r.suffix + "' replacement is longer than its suffix");
    }
    suffix_lengths_.push_back(suffix_len);
    auto it = std::find(pass_names.begin(), pass_names.end(), r.pass);
    if (it == pass_names.end()) {
      pass_names.push_back(r.pass);
      passes_.emplace_back();
      it = pass_names.end() - 1;
    }
    passes_[static_cast<std::size_t>(it - pass_names.begin())].push_back(i);
  }
  for (auto& pass : passes_) {
    std::stable_sort(pass.begin(), pass.end(), [this](std::size_t a, std::size_t b) {
      return suffix_lengths_[a] > suffix_lengths_[b];
    });
  }
}

StemRules StemRules::parse(std::string_view text) {
  std::vector<StemRule> rules;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (utf8::trim(line).empty() || utf8::trim(line).front() == '#') return;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      const auto semi = line.find(';', start);
      fields.push_back(line.substr(start, semi == std::string_view::npos ? semi : semi - start));
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    if (fields.size() != 4) {
      throw Error(Errc::MalformedRecord, "expected <pass>;<suffix>;<min_stem_len>;<replacement>",
                  line_no);
    }
    std::size_t min_len = 0;
    const auto num = utf8::trim(fields[2]);
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), min_len);
    if (ec != std::errc{} || ptr != num.data() + num.size() || min_len < 1) {
      throw Error(Errc::MalformedRecord, "min_stem_len must be an integer >= 1", line_no);
    }
    StemRule rule{std::string(utf8::trim(fields[0])), utf8::to_lower(utf8::trim(fields[1])),
                  min_len, utf8::to_lower(utf8::trim(fields[3]))};
    if (rule.pass.empty() || rule.suffix.empty()) {
      throw Error(Errc::MalformedRecord, "pass and suffix must be non-empty", line_no);
    }
    if (utf8::length(rule.replacement) > utf8::length(rule.suffix)) {
      throw Error(Errc::MalformedRecord, "replacement longer than suffix", line_no);
    }
    rules.push_back(std::move(rule));
  });
  return StemRules(std::move(rules));
}

StemRules StemRules::load(const std::filesystem::path& path) { return parse(read_file(path)); }

StemRules StemRules::defaults() { return parse(default_stem_rules_text()); }

std::string StemRules::stem(std::string_view word) const {
  std::string current(word);
  for (const auto& pass : passes_) {
    const std::size_t len = utf8::length(current);
    for (std::size_t idx : pass) {
      const auto& rule = rules_[idx];
      if (len < suffix_lengths_[idx] + rule.min_stem_len) continue;
      if (!ends_with(current, rule.suffix)) continue;
      current.resize(current.size() - rule.suffix.size());
      current += rule.replacement;
      break;
    }
  }
  return current;
}

std::vector<Token> preprocess(std::string_view text, const StopList& stops,
                              const StemRules& rules) {
  std::vector<Token> out;
  for (auto& surface : remove_stop_words(tokenize(text), stops)) {
    std::string stemmed = rules.stem(surface);
    out.push_back({std::move(surface), std::move(stemmed)});
  }
  return out;
}

}  // namespace vsd
