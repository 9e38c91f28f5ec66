#include <charconv>
#include <cmath>
#include <functional>

#include "vsd/error.hpp"
#include "vsd/eval.hpp"
#include "vsd/jsgf.hpp"

namespace vsd::jsgf {

Expansion Expansion::terminal(std::string word) {
  Expansion e;
  e.kind = Kind::Terminal;
  e.text = std::move(word);
  return e;
}

Expansion Expansion::rule_ref(std::string name) {
  Expansion e;
  e.kind = Kind::RuleRef;
  e.text = std::move(name);
  return e;
}

Expansion Expansion::sequence(std::vector<Expansion> items) {
  if (items.size() == 1) return std::move(items.front());
  Expansion e;
  e.kind = Kind::Sequence;
  e.children = std::move(items);
  return e;
}

Expansion Expansion::alternatives(std::vector<Expansion> items, std::vector<double> weights) {
  if (items.size() == 1) return std::move(items.front());
  Expansion e;
  e.kind = Kind::Alternatives;
  e.children = std::move(items);
  e.weights = std::move(weights);
  return e;
}

Expansion Expansion::optional(Expansion item) {
  Expansion e;
  e.kind = Kind::Optional;
  e.children.push_back(std::move(item));
  return e;
}

const Expansion* Grammar::find(std::string_view rule) const {
  const auto it = rules.find(std::string(rule));
  return it == rules.end() ? nullptr : &it->second;
}

namespace {

bool is_word_char(char c) {
  switch (c) {
    case ' ': case '\t': case '\r': case '\n': case ';': case '=': case '|': case '(': case ')':
    case '[': case ']': case '<': case '>': case '*': case '+': case '{': case '}': case '/':
    case '"':
      return false;
    default:
      return true;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Grammar parse() {
    Grammar g;
    skip_trivia();
    if (peek_is("#JSGF")) {
      while (!at_end() && cur() != ';') advance();
      expect(';', "';' to end the #JSGF header");
      skip_trivia();
    }
    if (peek_keyword("grammar")) {
      consume_keyword("grammar");
      skip_trivia();
      g.name = read_name("grammar name");
      skip_trivia();
      expect(';', "';' after grammar name");
    }
    for (;;) {
      skip_trivia();
      if (at_end()) break;
      if (peek_keyword("import")) fail("a rule definition (imports are not supported)");
      bool is_public = false;
      if (peek_keyword("public")) {
        consume_keyword("public");
        is_public = true;
        skip_trivia();
      }
      const std::size_t rule_line = line_;
      const std::size_t rule_col = col_;
      const std::string name = read_rule_name();
      skip_trivia();
      expect('=', "'=' after rule name");
      Expansion body = parse_alternatives();
      skip_trivia();
      expect(';', "';' or '|' to end the rule");
      if (g.rules.contains(name)) {
        throw Error(Errc::SyntaxError, "rule <" + name + "> is defined twice", rule_line, rule_col);
      }
      g.rules.emplace(name, std::move(body));
      g.rule_order.push_back(name);
      if (is_public) g.public_rules.insert(name);
    }
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    std::string found = at_end() ? "end of input" : std::string("'") + cur() + "'";
    throw Error(Errc::SyntaxError, "expected " + expected + ", found " + found, line_, col_);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char cur() const { return text_[pos_]; }
  bool peek_is(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  bool peek_keyword(std::string_view kw) const {
    if (!peek_is(kw)) return false;
    const std::size_t after = pos_ + kw.size();
    return after >= text_.size() || !is_word_char(text_[after]);
  }

  void consume_keyword(std::string_view kw) {
    for (std::size_t i = 0; i < kw.size(); ++i) advance();
  }

  void advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
  }

  void expect(char c, const std::string& what) {
    if (at_end() || cur() != c) fail(what);
    advance();
  }

  void skip_trivia() {
    while (!at_end()) {
      const char c = cur();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (peek_is("//")) {
        while (!at_end() && cur() != '\n') advance();
      } else if (peek_is("/*")) {
        advance();
        advance();
        while (!at_end() && !peek_is("*/")) advance();
        if (at_end()) fail("'*/' to close the comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  std::string read_name(const std::string& what) {
    const std::size_t start = pos_;
    while (!at_end() && is_word_char(cur())) advance();
    if (pos_ == start) fail(what);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_rule_name() {
    expect('<', "'<' to start a rule name");
    const std::size_t start = pos_;
    while (!at_end() && cur() != '>' && is_word_char(cur())) advance();
    if (pos_ == start) fail("a rule name");
    std::string name(text_.substr(start, pos_ - start));
    expect('>', "'>' to close the rule name");
    return name;
  }

  Expansion parse_alternatives() {
    std::vector<Expansion> items;
    std::vector<double> weights;
    bool weighted = false;
    for (std::size_t index = 0;; ++index) {
      skip_trivia();
      const bool has_weight = !at_end() && cur() == '/' && !peek_is("//") && !peek_is("/*");
      if (index == 0) weighted = has_weight;
      else if (has_weight != weighted) fail(weighted ? "a /weight/ on every alternative" : "an expansion (weights must be on every alternative)");
      if (has_weight) weights.push_back(read_weight());
      items.push_back(parse_sequence());
      skip_trivia();
      if (at_end() || cur() != '|') break;
      advance();
    }
    if (items.size() == 1) weights.clear();
    return Expansion::alternatives(std::move(items), std::move(weights));
  }

  double read_weight() {
    advance();  // '/'
    skip_trivia();
    const std::size_t start = pos_;
    while (!at_end() && cur() != '/') advance();
    std::string_view num = text_.substr(start, pos_ - start);
    while (!num.empty() && (num.back() == ' ' || num.back() == '\t')) num.remove_suffix(1);
    double w = 0.0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), w);
    if (ec != std::errc{} || ptr != num.data() + num.size() || !(w > 0.0) || !std::isfinite(w)) {
      fail("a positive weight between slashes");
    }
    expect('/', "'/' to close the weight");
    return w;
  }

  Expansion parse_sequence() {
    std::vector<Expansion> items;
    for (;;) {
      skip_trivia();
      if (at_end()) break;
      const char c = cur();
      if (c == ';' || c == '|' || c == ')' || c == ']') break;
      if (c == '(') {
        advance();
        Expansion inner = parse_alternatives();
        skip_trivia();
        expect(')', "')' to close the group");
        items.push_back(std::move(inner));
      } else if (c == '[') {
        advance();
        Expansion inner = parse_alternatives();
        skip_trivia();
        expect(']', "']' to close the optional");
        items.push_back(Expansion::optional(std::move(inner)));
      } else if (c == '<') {
        items.push_back(Expansion::rule_ref(read_rule_name()));
      } else if (c == '"') {
        advance();
        const std::size_t start = pos_;
        while (!at_end() && cur() != '"' && cur() != '\n') advance();
        std::string word(text_.substr(start, pos_ - start));
        expect('"', "'\"' to close the quoted token");
        if (word.empty()) fail("a non-empty quoted token");
        items.push_back(Expansion::terminal(std::move(word)));
      } else if (c == '*' || c == '+') {
        fail("a token (the Kleene operators * and + are not supported)");
      } else if (c == '{') {
        fail("a token (tags are not supported)");
      } else if (c == '/') {
        fail("a token (weights may only prefix an alternative)");
      } else if (c == '=' || c == '>' || c == '}') {
        fail("a token");
      } else {
        items.push_back(Expansion::terminal(read_name("a token")));
      }
      skip_trivia();
      if (!at_end() && (cur() == '*' || cur() == '+')) {
        fail("';' or '|' (the Kleene operators * and + are not supported)");
      }
    }
    if (items.empty()) fail("an expansion");
    return Expansion::sequence(std::move(items));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

void check_references(const Grammar& g) {
  std::function<void(const Expansion&)> visit = [&](const Expansion& e) {
    if (e.kind == Expansion::Kind::RuleRef && !g.rules.contains(e.text)) {
      throw Error(Errc::UnresolvedRule, "reference to undefined rule <" + e.text + ">");
    }
    for (const auto& c : e.children) visit(c);
  };
  for (const auto& name : g.rule_order) visit(g.rules.at(name));
}

void check_acyclic(const Grammar& g) {
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> marks;
  std::function<void(const std::string&)> visit_rule;
  std::function<void(const Expansion&)> visit = [&](const Expansion& e) {
    if (e.kind == Expansion::Kind::RuleRef) visit_rule(e.text);
    for (const auto& c : e.children) visit(c);
  };
  visit_rule = [&](const std::string& name) {
    auto& mark = marks[name];
    if (mark == Mark::Done) return;
    if (mark == Mark::Active) {
      throw Error(Errc::CyclicRule, "rule <" + name + "> refers back to itself");
    }
    mark = Mark::Active;
    visit(g.rules.at(name));
    marks[name] = Mark::Done;
  };
  for (const auto& name : g.rule_order) visit_rule(name);
}

bool needs_quotes(std::string_view word) {
  for (char c : word) {
    if (!is_word_char(c)) return true;
  }
  return word == "public" || word == "grammar" || word == "import" || word.starts_with("#JSGF");
}

void render(const Expansion& e, std::string& out, bool in_sequence, bool in_alternatives) {
  using Kind = Expansion::Kind;
  switch (e.kind) {
    case Kind::Terminal:
      if (needs_quotes(e.text)) out += '"' + e.text + '"';
      else out += e.text;
      return;
    case Kind::RuleRef:
      out += '<' + e.text + '>';
      return;
    case Kind::Optional:
      out += '[';
      render(e.children.front(), out, false, false);
      out += ']';
      return;
    case Kind::Sequence: {
      const bool wrap = in_sequence;
      if (wrap) out += '(';
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ' ';
        render(e.children[i], out, true, false);
      }
      if (wrap) out += ')';
      return;
    }
    case Kind::Alternatives: {
      const bool wrap = in_sequence || in_alternatives;
      if (wrap) out += '(';
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " | ";
        if (!e.weights.empty()) out += '/' + format_number(e.weights[i]) + "/ ";
        render(e.children[i], out, false, true);
      }
      if (wrap) out += ')';
      return;
    }
  }
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  Grammar g = Parser(text).parse();
  check_references(g);
  check_acyclic(g);
  return g;
}

std::string to_source(const Expansion& expansion) {
  std::string out;
  render(expansion, out, false, false);
  return out;
}

std::string to_source(const Grammar& grammar) {
  std::string out;
  if (!grammar.name.empty()) out += "grammar " + grammar.name + ";\n";
  for (const auto& name : grammar.rule_order) {
    if (grammar.public_rules.contains(name)) out += "public ";
    out += '<' + name + "> = " + to_source(grammar.rules.at(name)) + ";\n";
  }
  return out;
}

}  // namespace vsd::jsgf
