#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace lud {

// Identifier namespaces. Labels name conditions, holes are variables over
// labels, markers stand for entities and events. Params are the unification
// variables used by composition templates; they are spelled with a leading
// '?' so the three declared namespaces stay purely alphanumeric.

struct Label {
  std::string name;
  auto operator<=>(const Label&) const = default;
};

struct Hole {
  std::string name;
  auto operator<=>(const Hole&) const = default;
};

struct MarkerId {
  std::string name;
  auto operator<=>(const MarkerId&) const = default;
};

enum class MarkerKind { entity, event };

enum class ParamKind { marker, node };

struct Param {
  std::string name;  // includes the leading '?'
  ParamKind kind = ParamKind::node;
  auto operator<=>(const Param&) const = default;
};

// A term standing for a label or a hole; open templates may hold a param.
using NodeTerm = std::variant<Label, Hole, Param>;

// A term standing for a discourse marker.
using MarkerTerm = std::variant<MarkerId, Param>;

// A ground reference to a label or a hole.
using NodeRef = std::variant<Label, Hole>;

inline bool is_param(const NodeTerm& t) { return std::holds_alternative<Param>(t); }
inline bool is_param(const MarkerTerm& t) { return std::holds_alternative<Param>(t); }
inline bool is_label(const NodeTerm& t) { return std::holds_alternative<Label>(t); }
inline bool is_hole(const NodeTerm& t) { return std::holds_alternative<Hole>(t); }

inline const std::string& name_of(const NodeTerm& t) {
  return std::visit([](const auto& v) -> const std::string& { return v.name; }, t);
}
inline const std::string& name_of(const MarkerTerm& t) {
  return std::visit([](const auto& v) -> const std::string& { return v.name; }, t);
}
inline const std::string& name_of(const NodeRef& t) {
  return std::visit([](const auto& v) -> const std::string& { return v.name; }, t);
}

inline NodeTerm to_term(const NodeRef& r) {
  return std::visit([](const auto& v) -> NodeTerm { return v; }, r);
}

// Returns the ground reference behind a term, or nothing if it is a param.
inline std::optional<NodeRef> node_ref(const NodeTerm& t) {
  if (auto* l = std::get_if<Label>(&t)) return NodeRef{*l};
  if (auto* h = std::get_if<Hole>(&t)) return NodeRef{*h};
  return std::nullopt;
}

// Deterministic fresh-identifier source. Counters are monotone; a single
// generator drives one derivation so repeated runs produce identical names.
// Safe to share between threads, though each caller then interleaves.
class IdGen {
 public:
  IdGen() = default;
  IdGen(const IdGen&) = delete;
  IdGen& operator=(const IdGen&) = delete;

  Label label() { return Label{"l" + std::to_string(labels_++)}; }
  Hole hole() { return Hole{"h" + std::to_string(holes_++)}; }
  MarkerId marker(MarkerKind k) {
    auto n = markers_++;
    return MarkerId{(k == MarkerKind::entity ? "x" : "e") + std::to_string(n)};
  }
  Param node_param() { return Param{"?p" + std::to_string(params_++), ParamKind::node}; }
  Param marker_param() { return Param{"?p" + std::to_string(params_++), ParamKind::marker}; }

 private:
  std::atomic<std::uint64_t> labels_{0};
  std::atomic<std::uint64_t> holes_{0};
  std::atomic<std::uint64_t> markers_{0};
  std::atomic<std::uint64_t> params_{0};
};

}  // namespace lud
