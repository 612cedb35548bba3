#include "lud/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace lud {

std::string format_diagnostics(const std::vector<Diagnostic>& ds) {
  std::ostringstream out;
  for (const auto& d : ds) {
    if (d.line > 0) out << d.line << ':' << d.col << ": ";
    out << d.code << ": " << d.message << '\n';
  }
  return out.str();
}

std::vector<NodeTerm> node_args(const Condition& c) {
  return std::visit(
      [](const auto& v) -> std::vector<NodeTerm> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NegCondition>) {
          return {v.arg};
        } else if constexpr (std::is_same_v<T, ImpCondition> ||
                             std::is_same_v<T, ConjCondition> ||
                             std::is_same_v<T, DisjCondition>) {
          return {v.left, v.right};
        } else {
          return {};
        }
      },
      c);
}

std::vector<MarkerTerm> marker_args(const Condition& c) {
  return std::visit(
      [](const auto& v) -> std::vector<MarkerTerm> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DmCondition>) {
          return {v.marker};
        } else if constexpr (std::is_same_v<T, PredCondition>) {
          return v.args;
        } else {
          return {};
        }
      },
      c);
}

std::string to_display(const Condition& c) {
  std::ostringstream out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DmCondition>) {
          out << "dm(" << name_of(v.marker) << ")";
        } else if constexpr (std::is_same_v<T, PredCondition>) {
          out << v.rel << '(';
          for (std::size_t i = 0; i < v.args.size(); ++i) {
            if (i) out << ',';
            out << name_of(v.args[i]);
          }
          out << ')';
        } else if constexpr (std::is_same_v<T, NegCondition>) {
          out << "not(" << name_of(v.arg) << ")";
        } else if constexpr (std::is_same_v<T, ImpCondition>) {
          out << "imp(" << name_of(v.left) << ',' << name_of(v.right) << ")";
        } else if constexpr (std::is_same_v<T, ConjCondition>) {
          out << "and(" << name_of(v.left) << ',' << name_of(v.right) << ")";
        } else {
          out << "or(" << name_of(v.left) << ',' << name_of(v.right) << ")";
        }
      },
      c);
  return out.str();
}

std::string to_display(const Constraint& c) {
  std::ostringstream out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LeqConstraint>) {
          out << "leq " << name_of(v.below) << ' ' << name_of(v.above);
        } else if constexpr (std::is_same_v<T, LtConstraint>) {
          out << "lt " << name_of(v.below) << ' ' << name_of(v.above);
        } else {
          out << "presup " << name_of(v.anchor) << ' ' << name_of(v.host);
        }
      },
      c);
  return out.str();
}

IdSets all_identifiers(const LudRepr& u) {
  IdSets ids;
  for (const auto& h : u.holes) ids.holes.insert(h.name);
  for (const auto& [m, k] : u.markers) ids.markers.insert(m.name);
  auto note_node = [&](const NodeTerm& t) {
    if (auto* p = std::get_if<Param>(&t)) ids.params.insert(p->name);
  };
  auto note_marker = [&](const MarkerTerm& t) {
    if (auto* p = std::get_if<Param>(&t)) ids.params.insert(p->name);
  };
  auto note_ctx = [&](const Context& c) {
    note_marker(c.instance);
    note_node(c.main_label);
    note_node(c.top_hole);
  };
  for (const auto& [l, c] : u.conditions) {
    ids.labels.insert(l.name);
    for (const auto& a : node_args(c)) note_node(a);
    for (const auto& a : marker_args(c)) note_marker(a);
  }
  for (const auto& k : u.constraints) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, PresupConstraint>) {
            note_node(v.anchor);
            note_node(v.host);
          } else {
            note_node(v.below);
            note_node(v.above);
          }
        },
        k);
  }
  note_ctx(u.context);
  for (const auto& s : u.subcat) note_ctx(s);
  return ids;
}

// ---------------------------------------------------------------------------
// well_formed
// ---------------------------------------------------------------------------

namespace {

const char* kind_name(MarkerKind k) {
  return k == MarkerKind::entity ? "entity" : "event";
}

bool reserved_rel(const std::string& r) {
  return r == "dm" || r == "not" || r == "imp" || r == "and" || r == "or";
}

}  // namespace

std::vector<Diagnostic> well_formed(const LudRepr& u) {
  std::vector<Diagnostic> out;
  auto add = [&](std::string code, std::string msg) {
    out.push_back({std::move(code), std::move(msg)});
  };

  // Namespace disjointness across labels, holes and markers.
  for (const auto& [l, c] : u.conditions) {
    if (u.holes.count(Hole{l.name}))
      add("hole-as-label", "hole '" + l.name + "' also names a condition");
    if (u.markers.count(MarkerId{l.name}))
      add("namespace-collision", "'" + l.name + "' is both a marker and a label");
  }
  for (const auto& h : u.holes) {
    if (u.markers.count(MarkerId{h.name}))
      add("namespace-collision", "'" + h.name + "' is both a marker and a hole");
  }

  auto check_node = [&](const NodeTerm& t, const std::string& where) {
    if (auto* l = std::get_if<Label>(&t)) {
      if (!u.conditions.count(*l))
        add("dangling", "label '" + l->name + "' in " + where + " is not declared");
    } else if (auto* h = std::get_if<Hole>(&t)) {
      if (!u.holes.count(*h))
        add("dangling", "hole '" + h->name + "' in " + where + " is not declared");
    }
  };
  auto check_marker = [&](const MarkerTerm& t, const std::string& where) {
    if (auto* m = std::get_if<MarkerId>(&t)) {
      if (!u.markers.count(*m))
        add("dangling", "marker '" + m->name + "' in " + where + " is not declared");
    }
  };

  // Conditions: self-embedding first, then dangling references, in label order.
  for (const auto& [l, c] : u.conditions) {
    const std::string where = "condition " + l.name;
    if (auto* p = std::get_if<PredCondition>(&c)) {
      if (p->args.empty())
        add("empty-pred", "predicate '" + p->rel + "' at " + l.name + " has no arguments");
      if (reserved_rel(p->rel))
        add("reserved-relation", "relation '" + p->rel + "' at " + l.name + " is a reserved word");
    }
    for (const auto& a : node_args(c)) {
      if (auto* al = std::get_if<Label>(&a); al && *al == l) {
        add("self-embedding", "condition " + l.name + " refers to itself");
        continue;
      }
      check_node(a, where);
    }
    for (const auto& a : marker_args(c)) check_marker(a, where);
  }

  // Constraints.
  for (const auto& k : u.constraints) {
    const std::string where = "constraint '" + to_display(k) + "'";
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, LeqConstraint>) {
            if (!is_param(v.below) && !is_label(v.below))
              add("leq-left-not-label", where + ": left operand must be a label");
            if (!is_param(v.above) && !is_hole(v.above))
              add("leq-right-not-hole", where + ": right operand must be a hole");
            check_node(v.below, where);
            check_node(v.above, where);
          } else if constexpr (std::is_same_v<T, LtConstraint>) {
            if (!is_param(v.below) && !is_label(v.below))
              add("lt-operand-not-label", where + ": operands must be labels");
            if (!is_param(v.above) && !is_label(v.above))
              add("lt-operand-not-label", where + ": operands must be labels");
            check_node(v.below, where);
            check_node(v.above, where);
          } else {
            if (!is_param(v.anchor) && !is_label(v.anchor))
              add("presup-operand-not-label", where + ": operands must be labels");
            if (!is_param(v.host) && !is_label(v.host))
              add("presup-operand-not-label", where + ": operands must be labels");
            check_node(v.anchor, where);
            check_node(v.host, where);
          }
        },
        k);
  }

  // Context and subcat references.
  check_marker(u.context.instance, "context");
  check_node(u.context.main_label, "context");
  check_node(u.context.top_hole, "context");
  for (std::size_t i = 0; i < u.subcat.size(); ++i) {
    const std::string where = "subcat[" + std::to_string(i) + "]";
    check_marker(u.subcat[i].instance, where);
    check_node(u.subcat[i].main_label, where);
    check_node(u.subcat[i].top_hole, where);
  }

  // Structural cycles through more than one condition (self-loops are
  // reported above).
  std::map<Label, int> state;  // 0 unvisited, 1 on stack, 2 done
  bool cyclic = false;
  std::function<void(const Label&)> dfs = [&](const Label& l) {
    state[l] = 1;
    auto it = u.conditions.find(l);
    if (it != u.conditions.end()) {
      for (const auto& a : node_args(it->second)) {
        auto* al = std::get_if<Label>(&a);
        if (!al || *al == l || !u.conditions.count(*al)) continue;
        int s = state.count(*al) ? state[*al] : 0;
        if (s == 1) cyclic = true;
        else if (s == 0) dfs(*al);
      }
    }
    state[l] = 2;
  };
  for (const auto& [l, c] : u.conditions)
    if (!state.count(l)) dfs(l);
  if (cyclic) add("cyclic-embedding", "structural embedding contains a cycle");

  return out;
}

bool is_closed(const LudRepr& u) {
  return u.subcat.empty() && all_identifiers(u).params.empty();
}

// ---------------------------------------------------------------------------
// structural_order / subordination_closure / top / free_labels
// ---------------------------------------------------------------------------

std::vector<std::pair<NodeRef, Label>> structural_order(const LudRepr& u) {
  std::vector<std::pair<NodeRef, Label>> pairs;
  for (const auto& [l, c] : u.conditions) {
    for (const auto& a : node_args(c)) {
      if (auto r = node_ref(a)) pairs.emplace_back(*r, l);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  // Cycle check over label-to-label embedding.
  std::map<Label, std::vector<Label>> succ;
  for (const auto& [child, parent] : pairs) {
    if (auto* cl = std::get_if<Label>(&child)) succ[*cl].push_back(parent);
  }
  std::map<Label, int> state;
  std::function<void(const Label&)> dfs = [&](const Label& l) {
    state[l] = 1;
    for (const auto& nxt : succ[l]) {
      int s = state.count(nxt) ? state[nxt] : 0;
      if (s == 1)
        throw LudError(ErrorKind::cycle_detected,
                       "structural embedding is cyclic at " + nxt.name);
      if (s == 0) dfs(nxt);
    }
    state[l] = 2;
  };
  for (const auto& [l, c] : u.conditions)
    if (!state.count(l)) dfs(l);

  return pairs;
}

SubordinationOrder::SubordinationOrder(
    std::vector<NodeRef> nodes,
    const std::vector<std::pair<NodeRef, NodeRef>>& edges)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_[nodes_[i]] = i;

  const std::size_t n = nodes_.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : edges) {
    auto ia = index_.find(a);
    auto ib = index_.find(b);
    if (ia == index_.end() || ib == index_.end()) continue;
    adj[ia->second].push_back(ib->second);
  }
  reach_.assign(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    // BFS from s.
    std::vector<std::size_t> stack{s};
    reach_[s][s] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v]) {
        if (!reach_[s][w]) {
          reach_[s][w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n && antisymmetric_; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (reach_[i][j] && reach_[j][i]) {
        antisymmetric_ = false;
        break;
      }
}

bool SubordinationOrder::leq(const NodeRef& a, const NodeRef& b) const {
  auto ia = index_.find(a);
  auto ib = index_.find(b);
  if (ia == index_.end() || ib == index_.end()) return false;
  return reach_[ia->second][ib->second];
}

std::vector<NodeRef> SubordinationOrder::maximal(const std::set<Label>& exclude) const {
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto* l = std::get_if<Label>(&nodes_[i]);
    if (l && exclude.count(*l)) continue;
    cand.push_back(i);
  }
  std::vector<NodeRef> out;
  for (auto i : cand) {
    bool topmost = true;
    for (auto j : cand) {
      if (i == j) continue;
      if (reach_[i][j] && !reach_[j][i]) {
        topmost = false;
        break;
      }
    }
    if (topmost) out.push_back(nodes_[i]);
  }
  return out;
}

std::vector<std::pair<NodeRef, NodeRef>> SubordinationOrder::pairs() const {
  std::vector<std::pair<NodeRef, NodeRef>> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    for (std::size_t j = 0; j < nodes_.size(); ++j)
      if (reach_[i][j]) out.emplace_back(nodes_[i], nodes_[j]);
  return out;
}

SubordinationOrder subordination_closure(const LudRepr& u,
                                         const std::map<Hole, Label>* plugging) {
  std::vector<NodeRef> nodes;
  for (const auto& [l, c] : u.conditions) nodes.push_back(NodeRef{l});
  for (const auto& h : u.holes) nodes.push_back(NodeRef{h});

  std::vector<std::pair<NodeRef, NodeRef>> edges;
  for (const auto& [l, c] : u.conditions) {
    for (const auto& a : node_args(c)) {
      if (auto r = node_ref(a)) edges.emplace_back(*r, NodeRef{l});
    }
  }
  for (const auto& k : u.constraints) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, LeqConstraint> || std::is_same_v<T, LtConstraint>) {
            auto b = node_ref(v.below);
            auto a = node_ref(v.above);
            if (b && a) edges.emplace_back(*b, *a);
          }
        },
        k);
  }
  if (plugging) {
    for (const auto& [h, l] : *plugging) edges.emplace_back(NodeRef{l}, NodeRef{h});
  }
  return SubordinationOrder(std::move(nodes), edges);
}

namespace {

std::set<Label> presupposed_labels(const LudRepr& u) {
  std::set<Label> out;
  for (const auto& k : u.constraints) {
    if (auto* p = std::get_if<PresupConstraint>(&k)) {
      if (auto* l = std::get_if<Label>(&p->anchor)) out.insert(*l);
    }
  }
  return out;
}

}  // namespace

NodeRef top(const LudRepr& u) {
  auto order = subordination_closure(u);
  if (!order.antisymmetric())
    throw LudError(ErrorKind::no_top, "subordination order is cyclic");
  auto max = order.maximal(presupposed_labels(u));
  if (max.empty())
    throw LudError(ErrorKind::no_top, "representation has no top node");
  if (max.size() > 1) {
    std::string names;
    for (const auto& m : max) names += (names.empty() ? "" : ", ") + name_of(m);
    throw LudError(ErrorKind::ambiguous_top, "multiple maximal nodes: " + names);
  }
  return max.front();
}

std::set<Label> free_labels(const LudRepr& u) {
  std::set<Label> embedded;
  for (const auto& [l, c] : u.conditions) {
    for (const auto& a : node_args(c)) {
      if (auto* al = std::get_if<Label>(&a)) embedded.insert(*al);
    }
  }
  auto presup = presupposed_labels(u);
  std::set<Label> out;
  for (const auto& [l, c] : u.conditions) {
    if (!embedded.count(l) && !presup.count(l)) out.insert(l);
  }
  return out;
}

// ---------------------------------------------------------------------------
// rename_apart / label_isomorphic
// ---------------------------------------------------------------------------

namespace {

struct Renaming {
  std::map<std::string, Label> labels;
  std::map<std::string, Hole> holes;
  std::map<std::string, MarkerId> markers;
  std::map<std::string, Param> params;
};

LudRepr apply_renaming(const LudRepr& u, const Renaming& r) {
  auto node_fn = [&](const NodeTerm& t) -> NodeTerm {
    if (auto* l = std::get_if<Label>(&t)) {
      auto it = r.labels.find(l->name);
      return it == r.labels.end() ? t : NodeTerm{it->second};
    }
    if (auto* h = std::get_if<Hole>(&t)) {
      auto it = r.holes.find(h->name);
      return it == r.holes.end() ? t : NodeTerm{it->second};
    }
    auto& p = std::get<Param>(t);
    auto it = r.params.find(p.name);
    return it == r.params.end() ? t : NodeTerm{it->second};
  };
  auto marker_fn = [&](const MarkerTerm& t) -> MarkerTerm {
    if (auto* m = std::get_if<MarkerId>(&t)) {
      auto it = r.markers.find(m->name);
      return it == r.markers.end() ? t : MarkerTerm{it->second};
    }
    auto& p = std::get<Param>(t);
    auto it = r.params.find(p.name);
    return it == r.params.end() ? t : MarkerTerm{it->second};
  };
  LudRepr out = transform_terms(u, node_fn, marker_fn);
  // Re-key the declarations.
  std::set<Hole> holes;
  for (const auto& h : out.holes) {
    auto it = r.holes.find(h.name);
    holes.insert(it == r.holes.end() ? h : it->second);
  }
  out.holes = std::move(holes);
  std::map<MarkerId, MarkerKind> markers;
  for (const auto& [m, k] : out.markers) {
    auto it = r.markers.find(m.name);
    markers.emplace(it == r.markers.end() ? m : it->second, k);
  }
  out.markers = std::move(markers);
  std::map<Label, Condition> conditions;
  for (auto& [l, c] : out.conditions) {
    auto it = r.labels.find(l.name);
    conditions.emplace(it == r.labels.end() ? l : it->second, std::move(c));
  }
  out.conditions = std::move(conditions);
  return out;
}

}  // namespace

std::pair<LudRepr, LudRepr> rename_apart(const LudRepr& u1, const LudRepr& u2,
                                         IdGen& gen) {
  IdSets ids1 = all_identifiers(u1);
  IdSets ids2 = all_identifiers(u2);
  auto used = [](const IdSets& a, const IdSets& b, auto proj) {
    std::set<std::string> s = proj(a);
    const auto& t = proj(b);
    s.insert(t.begin(), t.end());
    return s;
  };
  auto used_labels = used(ids1, ids2, [](const IdSets& s) { return s.labels; });
  auto used_holes = used(ids1, ids2, [](const IdSets& s) { return s.holes; });
  auto used_markers = used(ids1, ids2, [](const IdSets& s) { return s.markers; });
  auto used_params = used(ids1, ids2, [](const IdSets& s) { return s.params; });

  Renaming ren;
  for (const auto& name : ids2.labels) {
    if (!ids1.labels.count(name)) continue;
    Label fresh = gen.label();
    while (used_labels.count(fresh.name)) fresh = gen.label();
    used_labels.insert(fresh.name);
    ren.labels.emplace(name, fresh);
  }
  for (const auto& name : ids2.holes) {
    if (!ids1.holes.count(name)) continue;
    Hole fresh = gen.hole();
    while (used_holes.count(fresh.name)) fresh = gen.hole();
    used_holes.insert(fresh.name);
    ren.holes.emplace(name, fresh);
  }
  for (const auto& name : ids2.markers) {
    if (!ids1.markers.count(name)) continue;
    auto kind_it = u2.markers.find(MarkerId{name});
    MarkerKind kind = kind_it == u2.markers.end() ? MarkerKind::entity : kind_it->second;
    MarkerId fresh = gen.marker(kind);
    while (used_markers.count(fresh.name)) fresh = gen.marker(kind);
    used_markers.insert(fresh.name);
    ren.markers.emplace(name, fresh);
  }
  for (const auto& name : ids2.params) {
    if (!ids1.params.count(name)) continue;
    Param fresh = gen.node_param();  // kind is rewritten per occurrence below
    while (used_params.count(fresh.name)) fresh = gen.node_param();
    used_params.insert(fresh.name);
    ren.params.emplace(name, fresh);
  }
  if (ren.labels.empty() && ren.holes.empty() && ren.markers.empty() &&
      ren.params.empty())
    return {u1, u2};

  LudRepr out2 = apply_renaming(u2, ren);
  return {u1, out2};
}

namespace {

// Shape key used to prune the isomorphism search.
std::string shape_key(const Condition& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DmCondition>) return "dm";
        else if constexpr (std::is_same_v<T, PredCondition>)
          return "pred:" + v.rel + "/" + std::to_string(v.args.size());
        else if constexpr (std::is_same_v<T, NegCondition>) return "not";
        else if constexpr (std::is_same_v<T, ImpCondition>) return "imp";
        else if constexpr (std::is_same_v<T, ConjCondition>) return "and";
        else return "or";
      },
      c);
}

struct IsoState {
  std::map<std::string, std::string> fwd, bwd;  // one per namespace merged via prefix
  bool bind(char ns, const std::string& a, const std::string& b) {
    std::string ka = std::string(1, ns) + a;
    std::string kb = std::string(1, ns) + b;
    auto fit = fwd.find(ka);
    auto bit = bwd.find(kb);
    if (fit != fwd.end()) return fit->second == kb;
    if (bit != bwd.end()) return false;
    fwd[ka] = kb;
    bwd[kb] = ka;
    return true;
  }
};

bool match_node(IsoState& st, const NodeTerm& a, const NodeTerm& b) {
  if (a.index() != b.index()) return false;
  if (auto* l = std::get_if<Label>(&a)) return st.bind('l', l->name, std::get<Label>(b).name);
  if (auto* h = std::get_if<Hole>(&a)) return st.bind('h', h->name, std::get<Hole>(b).name);
  const auto& pa = std::get<Param>(a);
  const auto& pb = std::get<Param>(b);
  return pa.kind == pb.kind && st.bind('p', pa.name, pb.name);
}

bool match_marker(IsoState& st, const MarkerTerm& a, const MarkerTerm& b) {
  if (a.index() != b.index()) return false;
  if (auto* m = std::get_if<MarkerId>(&a))
    return st.bind('m', m->name, std::get<MarkerId>(b).name);
  const auto& pa = std::get<Param>(a);
  const auto& pb = std::get<Param>(b);
  return pa.kind == pb.kind && st.bind('p', pa.name, pb.name);
}

bool match_condition(IsoState& st, const Condition& a, const Condition& b) {
  if (a.index() != b.index()) return false;
  auto na = node_args(a);
  auto nb = node_args(b);
  auto ma = marker_args(a);
  auto mb = marker_args(b);
  if (na.size() != nb.size() || ma.size() != mb.size()) return false;
  for (std::size_t i = 0; i < na.size(); ++i)
    if (!match_node(st, na[i], nb[i])) return false;
  for (std::size_t i = 0; i < ma.size(); ++i)
    if (!match_marker(st, ma[i], mb[i])) return false;
  if (auto* pa = std::get_if<PredCondition>(&a))
    if (pa->rel != std::get<PredCondition>(b).rel) return false;
  return true;
}

bool match_constraints(IsoState st, const LudRepr& a, const LudRepr& b,
                       const std::vector<Constraint>& ca, std::size_t i,
                       std::vector<bool>& usedb, const std::vector<Constraint>& cb);

bool match_context(IsoState& st, const Context& a, const Context& b) {
  return match_marker(st, a.instance, b.instance) &&
         match_node(st, a.main_label, b.main_label) &&
         match_node(st, a.top_hole, b.top_hole);
}

bool finish(IsoState st, const LudRepr& a, const LudRepr& b) {
  // Constraints as multisets under the binding, allowing any pairing.
  std::vector<Constraint> ca(a.constraints.begin(), a.constraints.end());
  std::vector<Constraint> cb(b.constraints.begin(), b.constraints.end());
  if (ca.size() != cb.size()) return false;
  std::vector<bool> usedb(cb.size(), false);
  if (!match_constraints(st, a, b, ca, 0, usedb, cb)) return false;
  return true;
}

bool match_one_constraint(IsoState& st, const Constraint& x, const Constraint& y) {
  if (x.index() != y.index()) return false;
  return std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        const auto& w = std::get<T>(y);
        if constexpr (std::is_same_v<T, PresupConstraint>) {
          return match_node(st, v.anchor, w.anchor) && match_node(st, v.host, w.host);
        } else {
          return match_node(st, v.below, w.below) && match_node(st, v.above, w.above);
        }
      },
      x);
}

bool match_constraints(IsoState st, const LudRepr& a, const LudRepr& b,
                       const std::vector<Constraint>& ca, std::size_t i,
                       std::vector<bool>& usedb, const std::vector<Constraint>& cb) {
  if (i == ca.size()) {
    // Context and subcat must correspond under the final binding.
    IsoState st2 = st;
    if (!match_context(st2, a.context, b.context)) return false;
    if (a.subcat.size() != b.subcat.size()) return false;
    for (std::size_t k = 0; k < a.subcat.size(); ++k)
      if (!match_context(st2, a.subcat[k], b.subcat[k])) return false;
    // Marker kinds must agree for every bound pair; unbound leftovers must
    // match in kind counts.
    std::map<MarkerKind, int> ka, kb;
    for (const auto& [m, kind] : a.markers) {
      auto it = st2.fwd.find("m" + m.name);
      if (it != st2.fwd.end()) {
        MarkerId tgt{it->second.substr(1)};
        auto bit = b.markers.find(tgt);
        if (bit == b.markers.end() || bit->second != kind) return false;
      } else {
        ka[kind]++;
      }
    }
    for (const auto& [m, kind] : b.markers) {
      if (!st2.bwd.count("m" + m.name)) kb[kind]++;
    }
    if (ka != kb) return false;
    // Unbound holes must balance (hole sets have equal size by |H| check).
    return true;
  }
  for (std::size_t j = 0; j < cb.size(); ++j) {
    if (usedb[j]) continue;
    IsoState st2 = st;
    if (!match_one_constraint(st2, ca[i], cb[j])) continue;
    usedb[j] = true;
    if (match_constraints(st2, a, b, ca, i + 1, usedb, cb)) return true;
    usedb[j] = false;
  }
  return false;
}

bool match_labels(IsoState st, const std::vector<Label>& la, std::size_t i,
                  const LudRepr& a, const LudRepr& b, std::vector<bool>& usedb,
                  const std::vector<Label>& lb) {
  if (i == la.size()) return finish(st, a, b);
  const Condition& ca = a.conditions.at(la[i]);
  for (std::size_t j = 0; j < lb.size(); ++j) {
    if (usedb[j]) continue;
    const Condition& cb = b.conditions.at(lb[j]);
    if (shape_key(ca) != shape_key(cb)) continue;
    IsoState st2 = st;
    if (!st2.bind('l', la[i].name, lb[j].name)) continue;
    if (!match_condition(st2, ca, cb)) continue;
    usedb[j] = true;
    if (match_labels(st2, la, i + 1, a, b, usedb, lb)) return true;
    usedb[j] = false;
  }
  return false;
}

}  // namespace

bool label_isomorphic(const LudRepr& a, const LudRepr& b) {
  if (a.conditions.size() != b.conditions.size()) return false;
  if (a.holes.size() != b.holes.size()) return false;
  if (a.markers.size() != b.markers.size()) return false;
  if (a.constraints.size() != b.constraints.size()) return false;
  if (a.subcat.size() != b.subcat.size()) return false;
  std::vector<Label> la, lb;
  for (const auto& [l, c] : a.conditions) la.push_back(l);
  for (const auto& [l, c] : b.conditions) lb.push_back(l);
  std::vector<bool> usedb(lb.size(), false);
  return match_labels(IsoState{}, la, 0, a, b, usedb, lb);
}

}  // namespace lud
