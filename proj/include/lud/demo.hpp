#pragma once

#include <string>
#include <vector>

#include "lud/grammar.hpp"

namespace lud {

// Built-in desk-scale German grammar and full-form lexicon; the same text
// ships under data/ for editing. The CLI falls back to these when no files
// are given.
const std::string& demo_grammar_text();
const std::string& demo_lexicon_text();

Grammar demo_grammar();
Lexicon demo_lexicon();

// Sentences the demo grammar covers, used by tests and determinism checks.
const std::vector<std::string>& demo_corpus();

}  // namespace lud
