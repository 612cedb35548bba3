#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lud/ids.hpp"

namespace lud {

// ---------------------------------------------------------------------------
// Conditions. Exactly six forms exist; anything else is not a condition.
// ---------------------------------------------------------------------------

struct DmCondition {
  MarkerTerm marker;
  auto operator<=>(const DmCondition&) const = default;
};

struct PredCondition {
  std::string rel;
  std::vector<MarkerTerm> args;  // arity >= 1
  auto operator<=>(const PredCondition&) const = default;
};

struct NegCondition {
  NodeTerm arg;
  auto operator<=>(const NegCondition&) const = default;
};

struct ImpCondition {
  NodeTerm left, right;
  auto operator<=>(const ImpCondition&) const = default;
};

struct ConjCondition {
  NodeTerm left, right;
  auto operator<=>(const ConjCondition&) const = default;
};

struct DisjCondition {
  NodeTerm left, right;
  auto operator<=>(const DisjCondition&) const = default;
};

using Condition =
    std::variant<DmCondition, PredCondition, NegCondition, ImpCondition,
                 ConjCondition, DisjCondition>;

// ---------------------------------------------------------------------------
// Constraints: subordination, strict subordination and presupposition.
// ---------------------------------------------------------------------------

struct LeqConstraint {  // label <= hole
  NodeTerm below, above;
  auto operator<=>(const LeqConstraint&) const = default;
};

struct LtConstraint {  // label < label
  NodeTerm below, above;
  auto operator<=>(const LtConstraint&) const = default;
};

struct PresupConstraint {  // anchor alpha host
  NodeTerm anchor, host;
  auto operator<=>(const PresupConstraint&) const = default;
};

using Constraint = std::variant<LeqConstraint, LtConstraint, PresupConstraint>;

// The composition interface of a representation: its main instance, main
// label and top hole. Open templates hold params in any of the three slots.
struct Context {
  MarkerTerm instance = Param{"?i", ParamKind::marker};
  NodeTerm main_label = Param{"?m", ParamKind::node};
  NodeTerm top_hole = Param{"?t", ParamKind::node};
  auto operator<=>(const Context&) const = default;
};

// An underspecified representation: holes, labeled conditions, constraints,
// plus the context/subcat pair that drives composition. Values are immutable
// by convention; operations build new ones.
struct LudRepr {
  std::set<Hole> holes;
  std::map<MarkerId, MarkerKind> markers;
  std::map<Label, Condition> conditions;
  std::set<Constraint> constraints;
  Context context;
  std::vector<Context> subcat;

  bool operator==(const LudRepr&) const = default;
};

// ---------------------------------------------------------------------------
// Errors and diagnostics.
// ---------------------------------------------------------------------------

enum class ErrorKind {
  cycle_detected,
  no_top,
  ambiguous_top,
  refused_too_large,
  unknown_label,
  not_admissible,
  empty_subcat,
  unsaturated_argument,
  binding_clash,
  arity_error,
  not_well_formed,
  invalid_plugging,
  grammar_error,
};

struct LudError : std::runtime_error {
  ErrorKind kind;
  LudError(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct Diagnostic {
  std::string code;     // stable machine-readable tag, e.g. "dangling"
  std::string message;  // human-readable detail
  int line = 0;         // 1-based; 0 when not tied to a source position
  int col = 0;
  bool operator==(const Diagnostic&) const = default;
};

std::string format_diagnostics(const std::vector<Diagnostic>& ds);

// ---------------------------------------------------------------------------
// Structural and subordination orders.
// ---------------------------------------------------------------------------

// Reflexive-transitive subordination order over the labels and holes of one
// representation. Antisymmetry is reported, not enforced.
class SubordinationOrder {
 public:
  SubordinationOrder(std::vector<NodeRef> nodes,
                     const std::vector<std::pair<NodeRef, NodeRef>>& edges);

  const std::vector<NodeRef>& nodes() const { return nodes_; }
  bool contains(const NodeRef& n) const { return index_.count(n) > 0; }
  // a <= b; false if either node is unknown.
  bool leq(const NodeRef& a, const NodeRef& b) const;
  bool antisymmetric() const { return antisymmetric_; }
  // Nodes with no strictly greater candidate; `exclude` removes labels from
  // candidacy entirely.
  std::vector<NodeRef> maximal(const std::set<Label>& exclude = {}) const;
  // All ordered pairs (a, b) with a <= b, including reflexive ones.
  std::vector<std::pair<NodeRef, NodeRef>> pairs() const;

 private:
  std::vector<NodeRef> nodes_;
  std::map<NodeRef, std::size_t> index_;
  std::vector<std::vector<bool>> reach_;
  bool antisymmetric_ = true;
};

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

// Every violation found: dangling references, self or cyclic embedding,
// namespace collisions, malformed constraints. Empty means valid.
std::vector<Diagnostic> well_formed(const LudRepr& u);

// True when the representation has no unbound params and no pending subcat;
// only closed representations can be plugged and interpreted.
bool is_closed(const LudRepr& u);

// The immediate embedding relation: (child, parent) for every label or hole
// appearing as an argument of the condition named parent. Throws
// cycle_detected when embedding is cyclic.
std::vector<std::pair<NodeRef, Label>> structural_order(const LudRepr& u);

// Reflexive-transitive closure of structural embedding, leq/lt constraints
// and (optionally) plugging pairs (p(h), h).
SubordinationOrder subordination_closure(
    const LudRepr& u, const std::map<Hole, Label>* plugging = nullptr);

// The unique maximal node of the subordination order, presupposed labels
// excluded. Throws no_top / ambiguous_top.
NodeRef top(const LudRepr& u);

// Labels that occur in no condition argument and anchor no presupposition.
std::set<Label> free_labels(const LudRepr& u);

// Copies of the two representations with disjoint label/hole/marker/param
// namespaces; the left input is returned unchanged, clashes in the right one
// are renamed from `gen`.
std::pair<LudRepr, LudRepr> rename_apart(const LudRepr& u1, const LudRepr& u2,
                                         IdGen& gen);

// Equality up to a consistent renaming of labels, holes, markers and params.
bool label_isomorphic(const LudRepr& a, const LudRepr& b);

// ---------------------------------------------------------------------------
// Term walking helpers shared by composition, serialization and tests.
// ---------------------------------------------------------------------------

struct IdSets {
  std::set<std::string> labels, holes, markers, params;
};

// All identifiers of a representation: declared ones plus every param
// occurrence in conditions, constraints, context and subcat.
IdSets all_identifiers(const LudRepr& u);

// Rewrites every term of the representation through the two callbacks.
template <typename NodeFn, typename MarkerFn>
LudRepr transform_terms(const LudRepr& u, NodeFn node_fn, MarkerFn marker_fn);

// Condition arguments that are node terms (dm/pred have none).
std::vector<NodeTerm> node_args(const Condition& c);
// Condition arguments that are marker terms.
std::vector<MarkerTerm> marker_args(const Condition& c);

std::string to_display(const Condition& c);
std::string to_display(const Constraint& c);

// --- template implementation -----------------------------------------------

template <typename NodeFn, typename MarkerFn>
LudRepr transform_terms(const LudRepr& u, NodeFn node_fn, MarkerFn marker_fn) {
  auto ctx = [&](const Context& c) {
    return Context{marker_fn(c.instance), node_fn(c.main_label), node_fn(c.top_hole)};
  };
  LudRepr out;
  out.holes = u.holes;
  out.markers = u.markers;
  for (const auto& [l, c] : u.conditions) {
    Condition nc = std::visit(
        [&](const auto& v) -> Condition {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, DmCondition>) {
            return DmCondition{marker_fn(v.marker)};
          } else if constexpr (std::is_same_v<T, PredCondition>) {
            PredCondition p{v.rel, {}};
            p.args.reserve(v.args.size());
            for (const auto& a : v.args) p.args.push_back(marker_fn(a));
            return p;
          } else if constexpr (std::is_same_v<T, NegCondition>) {
            return NegCondition{node_fn(v.arg)};
          } else if constexpr (std::is_same_v<T, ImpCondition>) {
            return ImpCondition{node_fn(v.left), node_fn(v.right)};
          } else if constexpr (std::is_same_v<T, ConjCondition>) {
            return ConjCondition{node_fn(v.left), node_fn(v.right)};
          } else {
            return DisjCondition{node_fn(v.left), node_fn(v.right)};
          }
        },
        c);
    out.conditions.emplace(l, std::move(nc));
  }
  for (const auto& k : u.constraints) {
    Constraint nk = std::visit(
        [&](const auto& v) -> Constraint {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, LeqConstraint>) {
            return LeqConstraint{node_fn(v.below), node_fn(v.above)};
          } else if constexpr (std::is_same_v<T, LtConstraint>) {
            return LtConstraint{node_fn(v.below), node_fn(v.above)};
          } else {
            return PresupConstraint{node_fn(v.anchor), node_fn(v.host)};
          }
        },
        k);
    out.constraints.insert(std::move(nk));
  }
  out.context = ctx(u.context);
  out.subcat.reserve(u.subcat.size());
  for (const auto& s : u.subcat) out.subcat.push_back(ctx(s));
  return out;
}

}  // namespace lud
