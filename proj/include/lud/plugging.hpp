#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lud/model.hpp"

namespace lud {

// A scope resolution: a bijection from the representation's holes onto its
// free labels.
struct Plugging {
  std::map<Hole, Label> assignment;
  auto operator<=>(const Plugging&) const = default;
};

struct PluggingResult {
  std::vector<Plugging> pluggings;
  std::vector<Diagnostic> diagnostics;  // cardinality-mismatch and friends
};

// True iff the subordination closure extended with the plugging pairs stays
// antisymmetric, every lt constraint is strict, and every leq constraint
// holds. Throws invalid_plugging when p is not a hole/free-label bijection.
bool is_admissible(const LudRepr& u, const Plugging& p);

// All admissible pluggings in lexicographic order (by hole id, then assigned
// label id). A |holes| != |free_labels| imbalance is reported as a
// diagnostic with zero pluggings.
PluggingResult enumerate_pluggings(const LudRepr& u);

// Reference semantics: explicitly materializes all |H|! bijections and
// filters them. Throws refused_too_large beyond 8 holes.
PluggingResult brute_force_pluggings(const LudRepr& u);

// Keeps the pluggings under which `mood` is maximal among labels, i.e. the
// mood condition outscopes the rest. Throws unknown_label.
std::vector<Plugging> filter_mood(const LudRepr& u, const Label& mood,
                                  const std::vector<Plugging>& ps);

std::string to_display(const Plugging& p);

}  // namespace lud
