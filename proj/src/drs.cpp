#include "lud/drs.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace lud {

// ---------------------------------------------------------------------------
// Structural order and canonical form.
// ---------------------------------------------------------------------------

int compare(const DrsCondition& a, const DrsCondition& b) {
  if (a.value.index() != b.value.index())
    return a.value.index() < b.value.index() ? -1 : 1;
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.value);
        if constexpr (std::is_same_v<T, DrsAtom>) {
          if (x.rel != y.rel) return x.rel < y.rel ? -1 : 1;
          if (x.args != y.args) return x.args < y.args ? -1 : 1;
          return 0;
        } else if constexpr (std::is_same_v<T, DrsNot>) {
          return compare(x.box, y.box);
        } else {
          if (int c = compare(x.left, y.left)) return c;
          return compare(x.right, y.right);
        }
      },
      a.value);
}

int compare(const Drs& a, const Drs& b) {
  if (a.domain != b.domain) return a.domain < b.domain ? -1 : 1;
  auto ia = a.conds.begin();
  auto ib = b.conds.begin();
  for (; ia != a.conds.end() && ib != b.conds.end(); ++ia, ++ib) {
    if (int c = compare(*ia, *ib)) return c;
  }
  if (ia != a.conds.end()) return 1;
  if (ib != b.conds.end()) return -1;
  return 0;
}

bool operator==(const Drs& a, const Drs& b) { return compare(a, b) == 0; }
bool operator<(const Drs& a, const Drs& b) { return compare(a, b) < 0; }

Drs Drs::make(std::vector<MarkerId> domain, std::vector<DrsCondition> conds) {
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  std::sort(conds.begin(), conds.end(),
            [](const DrsCondition& x, const DrsCondition& y) { return compare(x, y) < 0; });
  conds.erase(std::unique(conds.begin(), conds.end(),
                          [](const DrsCondition& x, const DrsCondition& y) {
                            return compare(x, y) == 0;
                          }),
              conds.end());
  Drs k;
  k.domain = std::move(domain);
  k.conds = std::move(conds);
  return k;
}

Drs merge(const Drs& k1, const Drs& k2) {
  std::vector<MarkerId> domain = k1.domain;
  domain.insert(domain.end(), k2.domain.begin(), k2.domain.end());
  std::vector<DrsCondition> conds = k1.conds;
  conds.insert(conds.end(), k2.conds.begin(), k2.conds.end());
  return Drs::make(std::move(domain), std::move(conds));
}

// ---------------------------------------------------------------------------
// Interpretation.
// ---------------------------------------------------------------------------

namespace {

MarkerId ground_marker(const MarkerTerm& t) {
  if (auto* m = std::get_if<MarkerId>(&t)) return *m;
  throw LudError(ErrorKind::not_well_formed,
                 "unbound param " + std::get<Param>(t).name + " in interpreted condition");
}

struct Evaluator {
  const LudRepr& u;
  const Plugging& p;

  Drs eval_node(const NodeTerm& t) const {
    if (auto* h = std::get_if<Hole>(&t)) {
      auto it = p.assignment.find(*h);
      if (it == p.assignment.end())
        throw LudError(ErrorKind::invalid_plugging, "hole " + h->name + " is unplugged");
      return eval_label(it->second);
    }
    if (auto* l = std::get_if<Label>(&t)) return eval_label(*l);
    throw LudError(ErrorKind::not_well_formed,
                   "unbound param " + std::get<Param>(t).name + " in interpreted condition");
  }

  Drs eval_label(const Label& l) const {
    auto it = u.conditions.find(l);
    if (it == u.conditions.end())
      throw LudError(ErrorKind::unknown_label, "no condition labeled " + l.name);
    return std::visit(
        [&](const auto& v) -> Drs {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, DmCondition>) {
            return Drs::make({ground_marker(v.marker)}, {});
          } else if constexpr (std::is_same_v<T, PredCondition>) {
            DrsAtom atom{v.rel, {}};
            for (const auto& a : v.args) atom.args.push_back(ground_marker(a));
            return Drs::make({}, {DrsCondition{std::move(atom)}});
          } else if constexpr (std::is_same_v<T, NegCondition>) {
            return Drs::make({}, {DrsCondition{DrsNot{eval_node(v.arg)}}});
          } else if constexpr (std::is_same_v<T, ImpCondition>) {
            return Drs::make(
                {}, {DrsCondition{DrsImplies{eval_node(v.left), eval_node(v.right)}}});
          } else if constexpr (std::is_same_v<T, ConjCondition>) {
            return merge(eval_node(v.left), eval_node(v.right));
          } else {
            return Drs::make({},
                             {DrsCondition{DrsOr{eval_node(v.left), eval_node(v.right)}}});
          }
        },
        it->second);
  }
};

NodeRef top_under(const LudRepr& u, const Plugging& p) {
  auto order = subordination_closure(u, &p.assignment);
  if (!order.antisymmetric())
    throw LudError(ErrorKind::no_top, "subordination order is cyclic under plugging");
  std::set<Label> presup;
  for (const auto& k : u.constraints) {
    if (auto* pc = std::get_if<PresupConstraint>(&k))
      if (auto* l = std::get_if<Label>(&pc->anchor)) presup.insert(*l);
  }
  auto max = order.maximal(presup);
  if (max.empty()) throw LudError(ErrorKind::no_top, "no top node");
  if (max.size() > 1) {
    std::string names;
    for (const auto& m : max) names += (names.empty() ? "" : ", ") + name_of(m);
    throw LudError(ErrorKind::ambiguous_top, "multiple maximal nodes: " + names);
  }
  return max.front();
}

// Counts occurrences of m in the atoms of a subtree.
int occurrences(const Drs& k, const MarkerId& m) {
  int n = 0;
  for (const auto& c : k.conds) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, DrsAtom>) {
            n += static_cast<int>(std::count(v.args.begin(), v.args.end(), m));
          } else if constexpr (std::is_same_v<T, DrsNot>) {
            n += occurrences(v.box, m);
          } else {
            n += occurrences(v.left, m) + occurrences(v.right, m);
          }
        },
        c.value);
  }
  return n;
}

bool declares(const Drs& k, const MarkerId& m) {
  if (std::binary_search(k.domain.begin(), k.domain.end(), m)) return true;
  for (const auto& c : k.conds) {
    bool found = std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, DrsAtom>) return false;
          else if constexpr (std::is_same_v<T, DrsNot>) return declares(v.box, m);
          else return declares(v.left, m) || declares(v.right, m);
        },
        c.value);
    if (found) return true;
  }
  return false;
}

// Inserts m into the narrowest box whose subtree covers every occurrence;
// falls back to this box when occurrences are split or local.
Drs close_into(Drs k, const MarkerId& m, int total) {
  int direct = 0;
  for (const auto& c : k.conds) {
    if (auto* a = std::get_if<DrsAtom>(&c.value))
      direct += static_cast<int>(std::count(a->args.begin(), a->args.end(), m));
  }
  if (direct == 0 && total > 0) {
    // Find the single sub-box holding all occurrences, if any.
    for (auto& c : k.conds) {
      bool placed = false;
      std::visit(
          [&](auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DrsNot>) {
              if (occurrences(v.box, m) == total) {
                v.box = close_into(std::move(v.box), m, total);
                placed = true;
              }
            } else if constexpr (std::is_same_v<T, DrsImplies> || std::is_same_v<T, DrsOr>) {
              if (occurrences(v.left, m) == total) {
                v.left = close_into(std::move(v.left), m, total);
                placed = true;
              } else if (occurrences(v.right, m) == total) {
                v.right = close_into(std::move(v.right), m, total);
                placed = true;
              }
            }
          },
          c.value);
      if (placed) return Drs::make(std::move(k.domain), std::move(k.conds));
    }
  }
  k.domain.push_back(m);
  return Drs::make(std::move(k.domain), std::move(k.conds));
}

Drs close_markers(const LudRepr& u, Drs k) {
  for (const auto& [m, kind] : u.markers) {
    if (declares(k, m)) continue;
    k = close_into(std::move(k), m, occurrences(k, m));
  }
  return k;
}

}  // namespace

Drs interpret_raw(const LudRepr& u, const Plugging& p) {
  if (!is_admissible(u, p))
    throw LudError(ErrorKind::not_admissible, "plugging is not admissible");
  return Evaluator{u, p}.eval_node(to_term(top_under(u, p)));
}

Drs accommodate(const LudRepr& u, const Plugging& p, Drs k) {
  Evaluator ev{u, p};
  for (const auto& c : u.constraints) {
    if (auto* pc = std::get_if<PresupConstraint>(&c)) {
      if (auto* l = std::get_if<Label>(&pc->anchor)) k = merge(k, ev.eval_label(*l));
    }
  }
  return k;
}

Drs interpret(const LudRepr& u, const Plugging& p) {
  auto diags = well_formed(u);
  if (!diags.empty())
    throw LudError(ErrorKind::not_well_formed, format_diagnostics(diags));
  Drs k = interpret_raw(u, p);
  k = accommodate(u, p, std::move(k));
  return close_markers(u, std::move(k));
}

ReadingsResult readings(const LudRepr& u) {
  ReadingsResult res;
  auto plugs = enumerate_pluggings(u);
  res.diagnostics = plugs.diagnostics;
  if (!res.diagnostics.empty()) return res;
  res.readings.reserve(plugs.pluggings.size());
  for (const auto& p : plugs.pluggings) res.readings.push_back(interpret(u, p));
  return res;
}

// ---------------------------------------------------------------------------
// Rendering.
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> render_lines(const Drs& k);

std::vector<std::string> render_condition(const DrsCondition& c) {
  return std::visit(
      [](const auto& v) -> std::vector<std::string> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DrsAtom>) {
          std::string s = v.rel + "(";
          for (std::size_t i = 0; i < v.args.size(); ++i) {
            if (i) s += ',';
            s += v.args[i].name;
          }
          s += ')';
          return {s};
        } else if constexpr (std::is_same_v<T, DrsNot>) {
          std::vector<std::string> out{"not"};
          auto sub = render_lines(v.box);
          out.insert(out.end(), sub.begin(), sub.end());
          return out;
        } else {
          auto out = render_lines(v.left);
          out.push_back(std::is_same_v<T, DrsImplies> ? "->" : "or");
          auto sub = render_lines(v.right);
          out.insert(out.end(), sub.begin(), sub.end());
          return out;
        }
      },
      c.value);
}

std::vector<std::string> render_lines(const Drs& k) {
  std::string markers;
  for (std::size_t i = 0; i < k.domain.size(); ++i) {
    if (i) markers += ' ';
    markers += k.domain[i].name;
  }
  std::vector<std::string> body;
  for (const auto& c : k.conds) {
    auto sub = render_condition(c);
    body.insert(body.end(), sub.begin(), sub.end());
  }
  if (body.empty()) body.push_back("");

  std::size_t w = markers.size();
  for (const auto& l : body) w = std::max(w, l.size());

  std::vector<std::string> out;
  std::string border = "+" + std::string(w + 2, '-') + "+";
  auto row = [&](const std::string& s) {
    return "| " + s + std::string(w - s.size(), ' ') + " |";
  };
  out.push_back(border);
  out.push_back(row(markers));
  out.push_back("|" + std::string(w + 2, '-') + "|");
  for (const auto& l : body) out.push_back(row(l));
  out.push_back(border);
  return out;
}

}  // namespace

std::string render_box(const Drs& k) {
  std::ostringstream out;
  for (const auto& line : render_lines(k)) out << line << '\n';
  return out.str();
}

}  // namespace lud
