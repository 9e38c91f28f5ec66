#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

// Finite subset of the Java Speech Grammar Format used to generate
// slot-filled training phrases.
//
//   #JSGF V1.0 UTF-8;          optional, ignored
//   grammar threats;           optional
//   public <r> = me (entrega | passa) [tudo] <obj> ;
//   <obj> = /3/ o celular | /1/ a carteira ;
//
// Supported: alternatives with optional /weight/ prefixes, ( ) grouping,
// [ ] optionals, <rule> references, bare or "quoted" words, // and /* */
// comments. Imports, {tags}, and the * / + operators are rejected, and rule
// references must form an acyclic graph, so every grammar is finite.
namespace vsd::jsgf {

struct Expansion {
  enum class Kind { Terminal, RuleRef, Sequence, Alternatives, Optional };

  Kind kind = Kind::Terminal;
  std::string text;                // word for Terminal, rule name for RuleRef
  std::vector<Expansion> children;  // Sequence / Alternatives (>= 2), Optional (exactly 1)
  std::vector<double> weights;      // Alternatives only; empty when unweighted

  static Expansion terminal(std::string word);
  static Expansion rule_ref(std::string name);
  static Expansion sequence(std::vector<Expansion> items);
  static Expansion alternatives(std::vector<Expansion> items, std::vector<double> weights = {});
  static Expansion optional(Expansion item);

  friend bool operator==(const Expansion&, const Expansion&) = default;
};

struct Grammar {
  std::string name;
  std::map<std::string, Expansion> rules;
  std::vector<std::string> rule_order;  // definition order
  std::set<std::string> public_rules;

  const Expansion* find(std::string_view rule) const;

  friend bool operator==(const Grammar&, const Grammar&) = default;
};

// Throws Error(SyntaxError) with line/column, Error(UnresolvedRule), or
// Error(CyclicRule).
Grammar parse_grammar(std::string_view text);

// Renders grammar source that parses back to an identical Grammar.
std::string to_source(const Grammar& grammar);
std::string to_source(const Expansion& expansion);

// Depth-first enumeration: alternatives left to right, an optional's absent
// branch before its present branch, leftmost choices varying slowest. Stops
// after `limit` phrases. Weights are ignored.
std::vector<std::string> enumerate_phrases(const Grammar& grammar, std::string_view rule,
                                           std::size_t limit);

// Independent random derivations. Alternatives are drawn in proportion to
// their weights (default 1); optionals are present with probability 1/2.
std::vector<std::string> sample_phrases(const Grammar& grammar, std::string_view rule,
                                        std::size_t count, std::uint64_t seed);

}  // namespace vsd::jsgf
