#pragma once

#include <string>
#include <variant>
#include <vector>

#include "lud/plugging.hpp"

namespace lud {

struct DrsCondition;

// A DRS box: a discourse-marker domain plus a condition set. Both are kept
// sorted and duplicate-free so boxes compare structurally.
struct Drs {
  std::vector<MarkerId> domain;
  std::vector<DrsCondition> conds;

  static Drs make(std::vector<MarkerId> domain, std::vector<DrsCondition> conds);
};

struct DrsAtom {
  std::string rel;
  std::vector<MarkerId> args;
};

struct DrsNot {
  Drs box;
};

struct DrsImplies {
  Drs left, right;
};

struct DrsOr {
  Drs left, right;
};

struct DrsCondition {
  std::variant<DrsAtom, DrsNot, DrsImplies, DrsOr> value;
};

int compare(const Drs& a, const Drs& b);
int compare(const DrsCondition& a, const DrsCondition& b);
bool operator==(const Drs& a, const Drs& b);
bool operator<(const Drs& a, const Drs& b);

// Domain and condition set union.
Drs merge(const Drs& k1, const Drs& k2);

// The interpretation of top under the plugging, before accommodation and
// marker closure. Requires a well-formed representation and an admissible
// total plugging.
Drs interpret_raw(const LudRepr& u, const Plugging& p);

// Merges every presupposed condition's interpretation into the outermost box
// (global accommodation).
Drs accommodate(const LudRepr& u, const Plugging& p, Drs k);

// Full interpretation: raw evaluation of top, accommodation, then
// existential closure of declared markers that no dm condition introduced
// (each lands in the narrowest box covering its occurrences).
Drs interpret(const LudRepr& u, const Plugging& p);

struct ReadingsResult {
  std::vector<Drs> readings;
  std::vector<Diagnostic> diagnostics;
};

// One DRS per admissible plugging, in enumeration order.
ReadingsResult readings(const LudRepr& u);

// Deterministic text rendering; the format is stable and golden-tested.
std::string render_box(const Drs& k);

}  // namespace lud
