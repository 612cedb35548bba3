#include "lud/textio.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace lud {

// ---------------------------------------------------------------------------
// serialize_lud
// ---------------------------------------------------------------------------

namespace {

std::string ctx_triple(const Context& c) {
  return "(" + name_of(c.instance) + "," + name_of(c.main_label) + "," +
         name_of(c.top_hole) + ")";
}

}  // namespace

std::string serialize_lud(const LudRepr& u) {
  std::ostringstream out;
  for (const auto& h : u.holes) out << "hole " << h.name << '\n';
  for (const auto& [m, k] : u.markers)
    out << "marker " << m.name << ' '
        << (k == MarkerKind::entity ? "entity" : "event") << '\n';
  for (const auto& [l, c] : u.conditions)
    out << l.name << ": " << to_display(c) << '\n';
  std::vector<std::string> constraint_lines;
  for (const auto& k : u.constraints) constraint_lines.push_back(to_display(k));
  std::sort(constraint_lines.begin(), constraint_lines.end());
  for (const auto& line : constraint_lines) out << line << '\n';
  out << "context " << name_of(u.context.instance) << ' '
      << name_of(u.context.main_label) << ' ' << name_of(u.context.top_hole) << '\n';
  if (!u.subcat.empty()) {
    out << "subcat [";
    for (std::size_t i = 0; i < u.subcat.size(); ++i) {
      if (i) out << ',';
      out << ctx_triple(u.subcat[i]);
    }
    out << "]\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// parse_lud_text
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  int line;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  int col() const { return static_cast<int>(pos) + 1; }
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// IDENT := '?'? [A-Za-z_][A-Za-z0-9_]* ; a leading '?' marks a param.
std::optional<std::string> read_ident(Cursor& c) {
  c.skip_ws();
  std::size_t start = c.pos;
  if (c.pos < c.s.size() && c.s[c.pos] == '?') ++c.pos;
  if (c.pos >= c.s.size() || (!std::isalpha(static_cast<unsigned char>(c.s[c.pos])) &&
                              c.s[c.pos] != '_')) {
    c.pos = start;
    return std::nullopt;
  }
  ++c.pos;
  while (c.pos < c.s.size() && ident_char(c.s[c.pos])) ++c.pos;
  return c.s.substr(start, c.pos - start);
}

bool is_param_name(const std::string& n) { return !n.empty() && n[0] == '?'; }

// Raw parsed pieces, resolved against declarations in a second pass.
struct RawCond {
  Label label;
  std::string form;  // dm | pred | not | imp | and | or
  std::string rel;   // for pred
  std::vector<std::string> args;
  int line;
};

struct RawConstraint {
  std::string kind;  // leq | lt | presup
  std::string a, b;
  int line;
};

struct RawContext {
  std::string instance, main, top;
  int line;
};

}  // namespace

ParseLudResult parse_lud_text(const std::string& text) {
  ParseLudResult res;
  auto& diags = res.diagnostics;
  auto fail = [&](int line, int col, const std::string& code, const std::string& msg) {
    diags.push_back({code, msg, line, col});
  };

  std::vector<std::pair<std::string, int>> holes;
  std::vector<std::tuple<std::string, MarkerKind, int>> markers;
  std::vector<RawCond> conds;
  std::vector<RawConstraint> constraints;
  std::optional<RawContext> context;
  std::vector<std::array<std::string, 3>> subcat;
  bool saw_subcat = false;
  int subcat_line = 0;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    Cursor c{raw, 0, lineno};
    if (c.at_end()) continue;
    if (raw[c.pos] == '#') continue;  // comment line
    auto first = read_ident(c);
    if (!first) {
      fail(lineno, c.col(), "malformed-line", "expected an identifier");
      continue;
    }
    if (*first == "hole") {
      auto id = read_ident(c);
      if (!id || is_param_name(*id) || !c.at_end()) {
        fail(lineno, c.col(), "malformed-line", "expected 'hole IDENT'");
        continue;
      }
      holes.emplace_back(*id, lineno);
    } else if (*first == "marker") {
      auto id = read_ident(c);
      auto kind = read_ident(c);
      if (!id || !kind || is_param_name(*id) || !c.at_end() ||
          (*kind != "entity" && *kind != "event")) {
        fail(lineno, c.col(), "malformed-line",
             "expected 'marker IDENT (entity|event)'");
        continue;
      }
      markers.emplace_back(*id, *kind == "entity" ? MarkerKind::entity : MarkerKind::event,
                           lineno);
    } else if (*first == "leq" || *first == "lt" || *first == "presup") {
      auto a = read_ident(c);
      auto b = read_ident(c);
      if (!a || !b || !c.at_end()) {
        fail(lineno, c.col(), "malformed-line",
             "expected '" + *first + " IDENT IDENT'");
        continue;
      }
      constraints.push_back({*first, *a, *b, lineno});
    } else if (*first == "context") {
      auto i = read_ident(c);
      auto m = read_ident(c);
      auto t = read_ident(c);
      if (!i || !m || !t || !c.at_end()) {
        fail(lineno, c.col(), "malformed-line", "expected 'context IDENT IDENT IDENT'");
        continue;
      }
      if (context) {
        fail(lineno, 1, "duplicate-context", "context was already declared");
        continue;
      }
      context = RawContext{*i, *m, *t, lineno};
    } else if (*first == "subcat") {
      if (saw_subcat) {
        fail(lineno, 1, "duplicate-subcat", "subcat was already declared");
        continue;
      }
      saw_subcat = true;
      subcat_line = lineno;
      if (!c.eat('[')) {
        fail(lineno, c.col(), "malformed-line", "expected 'subcat [...]'");
        continue;
      }
      bool ok = true;
      if (!c.eat(']')) {
        while (true) {
          if (!c.eat('(')) { ok = false; break; }
          auto i = read_ident(c);
          if (!i || !c.eat(',')) { ok = false; break; }
          auto m = read_ident(c);
          if (!m || !c.eat(',')) { ok = false; break; }
          auto t = read_ident(c);
          if (!t || !c.eat(')')) { ok = false; break; }
          subcat.push_back({*i, *m, *t});
          if (c.eat(']')) break;
          if (!c.eat(',')) { ok = false; break; }
        }
      }
      if (!ok || !c.at_end())
        fail(lineno, c.col(), "malformed-line", "malformed subcat list");
    } else {
      // Labeled condition: IDENT ':' cond
      if (is_param_name(*first)) {
        fail(lineno, 1, "malformed-line", "a param cannot label a condition");
        continue;
      }
      if (!c.eat(':')) {
        fail(lineno, c.col(), "malformed-line", "expected ':' after condition label");
        continue;
      }
      auto head = read_ident(c);
      if (!head || is_param_name(*head)) {
        fail(lineno, c.col(), "malformed-line", "expected a condition");
        continue;
      }
      RawCond rc;
      rc.label = Label{*first};
      rc.line = lineno;
      if (!c.eat('(')) {
        fail(lineno, c.col(), "malformed-line", "expected '(' in condition");
        continue;
      }
      std::vector<std::string> args;
      bool ok = true;
      while (true) {
        auto a = read_ident(c);
        if (!a) { ok = false; break; }
        args.push_back(*a);
        if (c.eat(')')) break;
        if (!c.eat(',')) { ok = false; break; }
      }
      if (!ok || !c.at_end()) {
        fail(lineno, c.col(), "malformed-line", "malformed condition arguments");
        continue;
      }
      std::size_t want = 0;
      if (*head == "dm" || *head == "not") want = 1;
      else if (*head == "imp" || *head == "and" || *head == "or") want = 2;
      if (want != 0 && args.size() != want) {
        fail(lineno, c.col(), "arity", "'" + *head + "' takes " +
                                            std::to_string(want) + " argument(s)");
        continue;
      }
      if (want != 0) {
        rc.form = *head;
      } else {
        rc.form = "pred";
        rc.rel = *head;
        if (args.empty()) {
          fail(lineno, c.col(), "arity", "predicates take at least one argument");
          continue;
        }
      }
      rc.args = std::move(args);
      conds.push_back(std::move(rc));
    }
  }

  if (!context)
    fail(lineno == 0 ? 1 : lineno, 1, "missing-context", "missing context declaration");

  // Second pass: declarations, then resolution.
  LudRepr u;
  for (const auto& [h, ln] : holes) {
    if (!u.holes.insert(Hole{h}).second)
      fail(ln, 1, "duplicate-declaration", "hole '" + h + "' declared twice");
  }
  for (const auto& [m, k, ln] : markers) {
    if (!u.markers.emplace(MarkerId{m}, k).second)
      fail(ln, 1, "duplicate-declaration", "marker '" + m + "' declared twice");
    if (u.holes.count(Hole{m}))
      fail(ln, 1, "namespace-collision", "'" + m + "' is already a hole");
  }
  std::set<std::string> label_names;
  for (const auto& rc : conds) {
    if (!label_names.insert(rc.label.name).second)
      fail(rc.line, 1, "duplicate-label", "label '" + rc.label.name + "' declared twice");
    if (u.holes.count(Hole{rc.label.name}))
      fail(rc.line, 1, "hole-as-label", "'" + rc.label.name + "' is already a hole");
    if (u.markers.count(MarkerId{rc.label.name}))
      fail(rc.line, 1, "namespace-collision", "'" + rc.label.name + "' is already a marker");
  }

  std::map<std::string, ParamKind> param_kinds;
  auto param_term = [&](const std::string& n, ParamKind k, int ln) -> Param {
    auto [it, inserted] = param_kinds.emplace(n, k);
    if (!inserted && it->second != k)
      fail(ln, 1, "param-kind", "param '" + n + "' used in both marker and node positions");
    return Param{n, it->second};
  };
  auto to_marker = [&](const std::string& n, int ln) -> MarkerTerm {
    if (is_param_name(n)) return param_term(n, ParamKind::marker, ln);
    if (u.markers.count(MarkerId{n})) return MarkerId{n};
    fail(ln, 1, "unknown-identifier", "'" + n + "' is not a declared marker");
    return MarkerId{n};
  };
  auto to_node = [&](const std::string& n, int ln) -> NodeTerm {
    if (is_param_name(n)) return param_term(n, ParamKind::node, ln);
    if (label_names.count(n)) return Label{n};
    if (u.holes.count(Hole{n})) return Hole{n};
    fail(ln, 1, "unknown-identifier", "'" + n + "' is not a declared label or hole");
    return Label{n};
  };

  for (const auto& rc : conds) {
    Condition cond = DmCondition{};
    if (rc.form == "dm") {
      cond = DmCondition{to_marker(rc.args[0], rc.line)};
    } else if (rc.form == "pred") {
      PredCondition p{rc.rel, {}};
      for (const auto& a : rc.args) p.args.push_back(to_marker(a, rc.line));
      cond = std::move(p);
    } else if (rc.form == "not") {
      cond = NegCondition{to_node(rc.args[0], rc.line)};
    } else if (rc.form == "imp") {
      cond = ImpCondition{to_node(rc.args[0], rc.line), to_node(rc.args[1], rc.line)};
    } else if (rc.form == "and") {
      cond = ConjCondition{to_node(rc.args[0], rc.line), to_node(rc.args[1], rc.line)};
    } else {
      cond = DisjCondition{to_node(rc.args[0], rc.line), to_node(rc.args[1], rc.line)};
    }
    u.conditions.emplace(rc.label, std::move(cond));
  }

  for (const auto& rk : constraints) {
    NodeTerm a = to_node(rk.a, rk.line);
    NodeTerm b = to_node(rk.b, rk.line);
    if (rk.kind == "leq") {
      if (!is_param(a) && !is_label(a))
        fail(rk.line, 1, "leq-operands", "leq expects label then hole");
      if (!is_param(b) && !is_hole(b))
        fail(rk.line, 1, "leq-operands", "leq expects label then hole");
      u.constraints.insert(LeqConstraint{a, b});
    } else if (rk.kind == "lt") {
      if ((!is_param(a) && !is_label(a)) || (!is_param(b) && !is_label(b)))
        fail(rk.line, 1, "lt-operands", "lt expects two labels");
      u.constraints.insert(LtConstraint{a, b});
    } else {
      if ((!is_param(a) && !is_label(a)) || (!is_param(b) && !is_label(b)))
        fail(rk.line, 1, "presup-operands", "presup expects two labels");
      u.constraints.insert(PresupConstraint{a, b});
    }
  }

  if (context) {
    u.context = Context{to_marker(context->instance, context->line),
                        to_node(context->main, context->line),
                        to_node(context->top, context->line)};
  }
  for (const auto& t : subcat) {
    u.subcat.push_back(Context{to_marker(t[0], subcat_line), to_node(t[1], subcat_line),
                               to_node(t[2], subcat_line)});
  }

  if (diags.empty()) res.repr = std::move(u);
  return res;
}

// ---------------------------------------------------------------------------
// Grammar and lexicon files
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_fields(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::optional<std::pair<std::string, std::vector<std::string>>> parse_call(
    const std::string& text) {
  auto open = text.find('(');
  if (open == std::string::npos) {
    if (text.empty()) return std::nullopt;
    return std::make_pair(trim(text), std::vector<std::string>{});
  }
  if (text.back() != ')') return std::nullopt;
  std::string name = trim(text.substr(0, open));
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::string> args;
  if (!trim(inner).empty()) {
    for (const auto& a : split_fields(inner, ',')) args.push_back(trim(a));
  }
  if (name.empty()) return std::nullopt;
  return std::make_pair(name, args);
}

std::optional<FeatureEq> parse_feature_eq(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) return std::nullopt;
  auto side = [&](const std::string& s) -> std::optional<std::variant<FeaturePath, std::string>> {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      if (s.empty()) return std::nullopt;
      return std::variant<FeaturePath, std::string>{s};
    }
    try {
      int node = std::stoi(s.substr(0, dot));
      std::string attr = s.substr(dot + 1);
      if (attr.empty() || node < 0) return std::nullopt;
      return std::variant<FeaturePath, std::string>{FeaturePath{node, attr}};
    } catch (...) {
      return std::nullopt;
    }
  };
  auto l = side(trim(text.substr(0, eq)));
  auto r = side(trim(text.substr(eq + 1)));
  if (!l || !r) return std::nullopt;
  return FeatureEq{*l, *r};
}

}  // namespace

GrammarLoadResult parse_grammar_text(const std::string& text) {
  GrammarLoadResult res;
  Grammar g;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw != "rule") {
      res.diagnostics.push_back({"malformed-line", "expected 'rule ...'", lineno, 1});
      continue;
    }
    std::string rest;
    std::getline(ls, rest);
    auto fields = split_fields(rest, ':');
    if (fields.size() != 3) {
      res.diagnostics.push_back(
          {"malformed-line", "expected 'rule LHS -> RHS : eqs : action'", lineno, 1});
      continue;
    }
    GrammarRule rule;
    {
      std::istringstream hs(fields[0]);
      std::string lhs, arrow, sym;
      hs >> lhs >> arrow;
      if (lhs.empty() || arrow != "->") {
        res.diagnostics.push_back({"malformed-line", "expected 'LHS -> RHS'", lineno, 1});
        continue;
      }
      rule.lhs = lhs;
      while (hs >> sym) rule.rhs.push_back(sym);
      if (rule.rhs.empty()) {
        res.diagnostics.push_back({"empty-rhs", "rules must have a nonempty right side",
                                   lineno, 1});
        continue;
      }
    }
    bool bad = false;
    std::string eqs = trim(fields[1]);
    if (eqs != "-" && !eqs.empty()) {
      for (const auto& part : split_fields(eqs, ',')) {
        auto eq = parse_feature_eq(trim(part));
        if (!eq) {
          res.diagnostics.push_back({"malformed-eq", "bad feature equation '" +
                                                         trim(part) + "'",
                                     lineno, 1});
          bad = true;
          break;
        }
        for (const auto& end : {eq->lhs, eq->rhs}) {
          if (auto* p = std::get_if<FeaturePath>(&end)) {
            if (p->node > static_cast<int>(rule.rhs.size())) {
              res.diagnostics.push_back({"bad-index", "feature path child index out of range",
                                         lineno, 1});
              bad = true;
            }
          }
        }
        if (bad) break;
        rule.eqs.push_back(*eq);
      }
    }
    if (bad) continue;
    auto call = parse_call(trim(fields[2]));
    auto want_children = [&](std::size_t n) {
      if (!call || call->second.size() != n) return false;
      for (const auto& a : call->second) {
        try {
          int idx = std::stoi(a);
          if (idx < 1 || idx > static_cast<int>(rule.rhs.size())) return false;
        } catch (...) {
          return false;
        }
      }
      return true;
    };
    if (!call) {
      res.diagnostics.push_back({"malformed-action", "bad semantic action", lineno, 1});
      continue;
    }
    SemAction act;
    if (call->first == "head" && want_children(1)) {
      act.kind = SemAction::Kind::head;
      act.first = std::stoi(call->second[0]);
    } else if (call->first == "fun_arg" && want_children(2)) {
      act.kind = SemAction::Kind::fun_arg;
      act.first = std::stoi(call->second[0]);
      act.second = std::stoi(call->second[1]);
    } else if (call->first == "apply_subject" && want_children(2)) {
      act.kind = SemAction::Kind::apply_subject;
      act.first = std::stoi(call->second[0]);
      act.second = std::stoi(call->second[1]);
    } else if (call->first == "apply_object" && want_children(2)) {
      act.kind = SemAction::Kind::apply_object;
      act.first = std::stoi(call->second[0]);
      act.second = std::stoi(call->second[1]);
    } else {
      res.diagnostics.push_back({"malformed-action",
                                 "unknown semantic action '" + call->first + "'", lineno, 1});
      continue;
    }
    rule.action = act;
    g.rules.push_back(std::move(rule));
  }

  // Reject unary cycles; derivation enumeration assumes none.
  std::map<std::string, std::set<std::string>> unary;
  for (const auto& r : g.rules)
    if (r.rhs.size() == 1) unary[r.lhs].insert(r.rhs[0]);
  for (const auto& [a, succs] : unary) {
    std::set<std::string> seen{a};
    std::vector<std::string> stack(succs.begin(), succs.end());
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      if (cur == a) {
        res.diagnostics.push_back({"unary-cycle",
                                   "unary rule cycle through '" + a + "'", 0, 0});
        break;
      }
      if (!seen.insert(cur).second) continue;
      auto it = unary.find(cur);
      if (it != unary.end())
        stack.insert(stack.end(), it->second.begin(), it->second.end());
    }
  }

  if (res.diagnostics.empty()) res.grammar = std::move(g);
  return res;
}

LexiconLoadResult parse_lexicon_text(const std::string& text) {
  LexiconLoadResult res;
  Lexicon lex;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line, ':');
    if (fields.size() != 2) {
      res.diagnostics.push_back(
          {"malformed-line", "expected 'word SURFACE CAT attrs : macro(...)'", lineno, 1});
      continue;
    }
    std::istringstream hs(fields[0]);
    std::string kw, surface, category;
    hs >> kw >> surface >> category;
    if (kw != "word" || surface.empty() || category.empty()) {
      res.diagnostics.push_back(
          {"malformed-line", "expected 'word SURFACE CAT attrs : macro(...)'", lineno, 1});
      continue;
    }
    LexEntry e;
    e.surface = surface;
    e.category = category;
    std::string attr;
    bool bad = false;
    while (hs >> attr) {
      auto eq = attr.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 >= attr.size()) {
        res.diagnostics.push_back({"malformed-attr", "bad attribute '" + attr + "'",
                                   lineno, 1});
        bad = true;
        break;
      }
      e.features[attr.substr(0, eq)] = attr.substr(eq + 1);
    }
    if (bad) continue;
    auto call = parse_call(trim(fields[1]));
    if (!call) {
      res.diagnostics.push_back({"malformed-macro", "bad macro call", lineno, 1});
      continue;
    }
    e.macro = call->first;
    e.args = call->second;
    lex.entries.push_back(std::move(e));
  }
  if (res.diagnostics.empty()) res.lexicon = std::move(lex);
  return res;
}

}  // namespace lud
