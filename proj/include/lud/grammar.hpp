#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lud/compose.hpp"

namespace lud {

// Flat attribute-value list with atomic values.
using AvList = std::map<std::string, std::string>;

// Most general unifier of two flat lists; nullopt on a value clash.
std::optional<AvList> unify_features(const AvList& a, const AvList& b);

// One endpoint of a feature equation: a path (node.attr, node 0 = lhs,
// 1..n = children) or an atomic constant.
struct FeaturePath {
  int node = 0;
  std::string attr;
  auto operator<=>(const FeaturePath&) const = default;
};

struct FeatureEq {
  std::variant<FeaturePath, std::string> lhs, rhs;
};

// Semantic annotation of a rule. `head` passes a child through; `fun_arg`
// applies child f to child a; `apply_subject` / `apply_object` pick the
// quantifier wiring when the nominal child still carries a scope slot.
struct SemAction {
  enum class Kind { head, fun_arg, apply_subject, apply_object };
  Kind kind = Kind::head;
  int first = 1;   // head / functor / np (subject) / verb
  int second = 0;  // argument / vp / np (object)
};

struct GrammarRule {
  std::string lhs;
  std::vector<std::string> rhs;  // nonempty
  std::vector<FeatureEq> eqs;
  SemAction action;
};

struct Grammar {
  std::vector<GrammarRule> rules;
  std::string start = "s";
};

// A lexical entry: surface form, category, agreement features, and the
// macro invocation that instantiates its semantics.
struct LexEntry {
  std::string surface;
  std::string category;
  AvList features;
  std::string macro;              // noun | intransitive | transitive |
                                  // universal | indefinite | demonstrative
  std::vector<std::string> args;  // macro parameters
};

struct Lexicon {
  std::vector<LexEntry> entries;
};

LudRepr instantiate(const LexEntry& e, IdGen& gen);

// A parse tree over grammar rules and lexicon entries.
struct Derivation {
  struct Node {
    bool leaf = false;
    int rule = -1;   // index into Grammar::rules
    int entry = -1;  // index into Lexicon::entries
    int start = 0, end = 0;
    std::vector<Node> children;
  };
  Node root;
};

struct ParseResult {
  std::vector<Derivation> derivations;
  std::vector<Diagnostic> diagnostics;
};

// All complete derivations of the start category spanning the tokens, with
// every feature equation satisfied, in a deterministic leftmost order.
// Unknown tokens yield a lexicon-miss diagnostic and no derivations.
ParseResult parse(const std::vector<std::string>& tokens, const Grammar& g,
                  const Lexicon& lex);

struct DeriveResult {
  std::optional<LudRepr> repr;
  std::vector<Diagnostic> diagnostics;  // node-located semantic failures
};

// Bottom-up semantic evaluation of one derivation. Failures reject the
// derivation with a located diagnostic instead of throwing.
DeriveResult derive_lud(const Derivation& d, const Grammar& g, const Lexicon& lex);

std::vector<std::string> tokenize(const std::string& sentence);

}  // namespace lud
