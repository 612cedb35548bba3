#include "lud/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace lud {

std::optional<AvList> unify_features(const AvList& a, const AvList& b) {
  AvList out = a;
  for (const auto& [k, v] : b) {
    auto it = out.find(k);
    if (it == out.end()) {
      out.emplace(k, v);
    } else if (it->second != v) {
      return std::nullopt;
    }
  }
  return out;
}

std::vector<std::string> tokenize(const std::string& sentence) {
  std::vector<std::string> out;
  std::istringstream in(sentence);
  std::string tok;
  while (in >> tok) {
    for (auto& ch : tok) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    out.push_back(tok);
  }
  return out;
}

LudRepr instantiate(const LexEntry& e, IdGen& gen) {
  if (e.macro == "noun") {
    if (e.args.size() != 1)
      throw LudError(ErrorKind::arity_error, "noun macro takes one relation");
    return lex_noun(e.args[0], gen);
  }
  if (e.macro == "intransitive") {
    if (e.args.size() != 2)
      throw LudError(ErrorKind::arity_error, "intransitive macro takes relation and role");
    return lex_intransitive(e.args[0], e.args[1], gen);
  }
  if (e.macro == "transitive") {
    if (e.args.size() != 3)
      throw LudError(ErrorKind::arity_error, "transitive macro takes relation and two roles");
    return lex_transitive(e.args[0], {e.args[1], e.args[2]}, gen);
  }
  if (e.macro == "universal") return lex_universal(gen);
  if (e.macro == "indefinite") return lex_indefinite(gen);
  if (e.macro == "demonstrative") return lex_demonstrative(gen);
  throw LudError(ErrorKind::grammar_error, "unknown semantic macro '" + e.macro + "'");
}

// ---------------------------------------------------------------------------
// Earley recognition.
// ---------------------------------------------------------------------------

namespace {

struct EarleyItem {
  int rule;
  int dot;
  int origin;
  auto operator<=>(const EarleyItem&) const = default;
};

// Categories a token can be a leaf of, with the lexicon entries per category.
std::map<std::string, std::vector<int>> leaf_options(const Lexicon& lex,
                                                     const std::string& token) {
  std::map<std::string, std::vector<int>> out;
  for (std::size_t i = 0; i < lex.entries.size(); ++i) {
    if (lex.entries[i].surface == token)
      out[lex.entries[i].category].push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace

ParseResult parse(const std::vector<std::string>& tokens, const Grammar& g,
                  const Lexicon& lex) {
  ParseResult res;

  std::set<std::string> known;
  for (const auto& e : lex.entries) known.insert(e.surface);
  std::string missing;
  for (const auto& t : tokens) {
    if (!known.count(t)) missing += (missing.empty() ? "" : ", ") + t;
  }
  if (!missing.empty()) {
    res.diagnostics.push_back({"lexicon-miss", "unknown token(s): " + missing});
    return res;
  }
  if (tokens.empty()) return res;

  const int n = static_cast<int>(tokens.size());
  std::set<std::string> nonterminals;
  for (const auto& r : g.rules) nonterminals.insert(r.lhs);

  // Chart of Earley item sets, indexed by end position.
  std::vector<std::set<EarleyItem>> chart(n + 1);
  auto expects = [&](const EarleyItem& it) -> const std::string* {
    const auto& r = g.rules[it.rule];
    if (it.dot >= static_cast<int>(r.rhs.size())) return nullptr;
    return &r.rhs[it.dot];
  };
  std::function<void(int, EarleyItem)> add = [&](int pos, EarleyItem it) {
    if (!chart[pos].insert(it).second) return;
    const std::string* next = expects(it);
    if (next == nullptr) {
      // Completion: advance items in the origin set waiting for this lhs.
      const auto waiting = chart[it.origin];
      for (const auto& w : waiting) {
        const std::string* wn = expects(w);
        if (wn && *wn == g.rules[it.rule].lhs)
          add(pos, EarleyItem{w.rule, w.dot + 1, w.origin});
      }
    } else if (nonterminals.count(*next)) {
      // Prediction.
      for (std::size_t r = 0; r < g.rules.size(); ++r) {
        if (g.rules[r].lhs == *next) add(pos, EarleyItem{static_cast<int>(r), 0, pos});
      }
      // A predicted nonterminal may already be complete here only for empty
      // rules, which the loader rejects.
    }
  };

  for (std::size_t r = 0; r < g.rules.size(); ++r) {
    if (g.rules[r].lhs == g.start) add(0, EarleyItem{static_cast<int>(r), 0, 0});
  }
  for (int pos = 0; pos < n; ++pos) {
    auto opts = leaf_options(lex, tokens[pos]);
    const auto items = chart[pos];
    for (const auto& it : items) {
      const std::string* next = expects(it);
      if (next && opts.count(*next))
        add(pos + 1, EarleyItem{it.rule, it.dot + 1, it.origin});
    }
    // Completions triggered by the scan are handled inside add().
  }

  // Completion table: T[cat][i][j] derived from complete items.
  std::map<std::string, std::vector<std::vector<bool>>> complete;
  for (const auto& nt : nonterminals)
    complete[nt].assign(n + 1, std::vector<bool>(n + 1, false));
  for (int pos = 0; pos <= n; ++pos) {
    for (const auto& it : chart[pos]) {
      const auto& r = g.rules[it.rule];
      if (it.dot == static_cast<int>(r.rhs.size())) complete[r.lhs][it.origin][pos] = true;
    }
  }

  // Enumerate derivations from the completion table, leftmost splits first.
  using Node = Derivation::Node;
  std::map<std::tuple<std::string, int, int>, std::vector<Node>> memo;
  std::function<const std::vector<Node>&(const std::string&, int, int)> trees =
      [&](const std::string& cat, int i, int j) -> const std::vector<Node>& {
    auto key = std::make_tuple(cat, i, j);
    auto found = memo.find(key);
    if (found != memo.end()) return found->second;
    memo[key] = {};  // guards against unary cycles, which the loader rejects
    std::vector<Node> out;
    // Leaves.
    if (j == i + 1) {
      auto opts = leaf_options(lex, tokens[i]);
      auto oit = opts.find(cat);
      if (oit != opts.end()) {
        for (int entry : oit->second) {
          Node leaf;
          leaf.leaf = true;
          leaf.entry = entry;
          leaf.start = i;
          leaf.end = j;
          out.push_back(leaf);
        }
      }
    }
    // Rules.
    if (nonterminals.count(cat) && complete.count(cat) && complete[cat][i][j]) {
      for (std::size_t r = 0; r < g.rules.size(); ++r) {
        if (g.rules[r].lhs != cat) continue;
        const auto& rhs = g.rules[r].rhs;
        std::vector<std::vector<Node>> picked(rhs.size());
        std::function<void(std::size_t, int, std::vector<Node>&)> split =
            [&](std::size_t k, int at, std::vector<Node>& acc) {
              if (k == rhs.size()) {
                if (at != j) return;
                Node node;
                node.rule = static_cast<int>(r);
                node.start = i;
                node.end = j;
                node.children = acc;
                out.push_back(node);
                return;
              }
              int max_end = j - static_cast<int>(rhs.size() - k - 1);
              for (int end = at + 1; end <= max_end; ++end) {
                for (const auto& child : trees(rhs[k], at, end)) {
                  acc.push_back(child);
                  split(k + 1, end, acc);
                  acc.pop_back();
                }
              }
            };
        std::vector<Node> acc;
        split(0, i, acc);
      }
    }
    memo[key] = std::move(out);
    return memo[key];
  };

  std::vector<Node> roots = trees(g.start, 0, n);

  // Feature filtering. Computes a node's feature list bottom-up; equations
  // are solved as a small union-find over (node, attr) slots.
  std::function<std::optional<AvList>(const Node&)> features =
      [&](const Node& node) -> std::optional<AvList> {
    if (node.leaf) return lex.entries[node.entry].features;
    std::vector<AvList> child_features;
    for (const auto& c : node.children) {
      auto f = features(c);
      if (!f) return std::nullopt;
      child_features.push_back(*f);
    }
    const auto& rule = g.rules[node.rule];
    std::map<FeaturePath, std::string> ground;  // solved slot values
    std::vector<std::pair<FeaturePath, FeaturePath>> links;
    auto slot_value = [&](const FeaturePath& p) -> std::optional<std::string> {
      if (p.node > 0) {
        const auto& fs = child_features[p.node - 1];
        auto it = fs.find(p.attr);
        if (it != fs.end()) return it->second;
      }
      auto g_it = ground.find(p);
      if (g_it != ground.end()) return g_it->second;
      return std::nullopt;
    };
    auto set_ground = [&](const FeaturePath& p, const std::string& v) {
      auto [it, inserted] = ground.emplace(p, v);
      return inserted || it->second == v;
    };
    for (const auto& eq : rule.eqs) {
      auto* lp = std::get_if<FeaturePath>(&eq.lhs);
      auto* rp = std::get_if<FeaturePath>(&eq.rhs);
      if (lp && rp) {
        links.emplace_back(*lp, *rp);
      } else if (lp) {
        if (!set_ground(*lp, std::get<std::string>(eq.rhs))) return std::nullopt;
      } else if (rp) {
        if (!set_ground(*rp, std::get<std::string>(eq.lhs))) return std::nullopt;
      }
    }
    // Propagate values across links until stable; clash fails the node.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [a, b] : links) {
        auto va = slot_value(a);
        auto vb = slot_value(b);
        if (va && vb) {
          if (*va != *vb) return std::nullopt;
        } else if (va && !vb) {
          ground.emplace(b, *va);
          changed = true;
        } else if (vb && !va) {
          ground.emplace(a, *vb);
          changed = true;
        }
      }
    }
    // Constant equations against child features must also hold.
    for (const auto& [p, v] : ground) {
      if (p.node > 0) {
        auto actual = slot_value(p);
        const auto& fs = child_features[p.node - 1];
        auto it = fs.find(p.attr);
        if (it != fs.end() && it->second != v) return std::nullopt;
        (void)actual;
      }
    }
    AvList lhs_features;
    for (const auto& [p, v] : ground) {
      if (p.node == 0) lhs_features[p.attr] = v;
    }
    return lhs_features;
  };

  for (auto& root : roots) {
    if (features(root)) {
      Derivation d;
      d.root = std::move(root);
      res.derivations.push_back(std::move(d));
    }
  }

  // Deterministic order: by the preorder (rule, entry) key sequence.
  auto key_of = [&](const Derivation& d) {
    std::vector<int> key;
    std::function<void(const Node&)> walk = [&](const Node& nd) {
      key.push_back(nd.leaf ? -(nd.entry + 1) : nd.rule);
      for (const auto& c : nd.children) walk(c);
    };
    walk(d.root);
    return key;
  };
  std::stable_sort(res.derivations.begin(), res.derivations.end(),
                   [&](const Derivation& a, const Derivation& b) {
                     return key_of(a) < key_of(b);
                   });
  return res;
}

// ---------------------------------------------------------------------------
// Semantic evaluation.
// ---------------------------------------------------------------------------

DeriveResult derive_lud(const Derivation& d, const Grammar& g, const Lexicon& lex) {
  DeriveResult res;
  IdGen gen;
  std::function<LudRepr(const Derivation::Node&)> eval =
      [&](const Derivation::Node& node) -> LudRepr {
    if (node.leaf) return instantiate(lex.entries[node.entry], gen);
    std::vector<LudRepr> kids;
    kids.reserve(node.children.size());
    for (const auto& c : node.children) kids.push_back(eval(c));
    const auto& rule = g.rules[node.rule];
    auto child = [&](int idx) -> const LudRepr& {
      if (idx < 1 || idx > static_cast<int>(kids.size()))
        throw LudError(ErrorKind::grammar_error,
                       "semantic action child index out of range");
      return kids[idx - 1];
    };
    switch (rule.action.kind) {
      case SemAction::Kind::head:
        return child(rule.action.first);
      case SemAction::Kind::fun_arg:
        return fun_arg_apply(child(rule.action.first), child(rule.action.second), gen);
      case SemAction::Kind::apply_subject: {
        const LudRepr& np = child(rule.action.first);
        const LudRepr& vp = child(rule.action.second);
        if (np.subcat.empty()) return fun_arg_apply(vp, np, gen);
        return apply_quantified_subject(np, vp, gen);
      }
      case SemAction::Kind::apply_object: {
        const LudRepr& v = child(rule.action.first);
        const LudRepr& np = child(rule.action.second);
        if (np.subcat.empty()) return fun_arg_apply(v, np, gen);
        return apply_quantified_object(v, np, gen);
      }
    }
    throw LudError(ErrorKind::grammar_error, "unhandled semantic action");
  };
  // Locate the failing node for the diagnostic by evaluating with a catch at
  // the root; inner failures carry the span in the message.
  try {
    res.repr = eval(d.root);
  } catch (const LudError& e) {
    res.diagnostics.push_back(
        {"semantic-rejection", std::string(e.what()) + " (derivation spanning " +
                                   std::to_string(d.root.start) + ".." +
                                   std::to_string(d.root.end) + ")"});
  }
  return res;
}

}  // namespace lud
