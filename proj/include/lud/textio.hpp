#pragma once

#include <string>

#include "lud/grammar.hpp"

namespace lud {

// Canonical line-oriented form of a representation. Deterministic: lines are
// emitted as holes, markers, conditions (by label), constraints, context,
// then subcat (omitted when empty). Params serialize with their '?' prefix.
std::string serialize_lud(const LudRepr& u);

struct ParseLudResult {
  std::optional<LudRepr> repr;
  std::vector<Diagnostic> diagnostics;  // positioned (1-based line/col)
};

// Parses the format written by serialize_lud. Declarations may appear in any
// order; references are resolved after a first pass.
ParseLudResult parse_lud_text(const std::string& text);

struct GrammarLoadResult {
  std::optional<Grammar> grammar;
  std::vector<Diagnostic> diagnostics;
};

struct LexiconLoadResult {
  std::optional<Lexicon> lexicon;
  std::vector<Diagnostic> diagnostics;
};

// rule LHS -> RHS... : featureEq, ... : action(i[,j])
GrammarLoadResult parse_grammar_text(const std::string& text);

// word SURFACE CATEGORY attr=value ... : macro(arg, ...)
LexiconLoadResult parse_lexicon_text(const std::string& text);

}  // namespace lud
