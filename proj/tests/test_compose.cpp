#include <doctest.h>

#include <random>

#include "lud/compose.hpp"
#include "lud/drs.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace lud;

namespace {

LudRepr figure_das_geht() {
  LudRepr u;
  u.holes.insert(Hole{"h0"});
  u.markers.emplace(MarkerId{"e"}, MarkerKind::event);
  u.markers.emplace(MarkerId{"z"}, MarkerKind::entity);
  u.conditions.emplace(Label{"l4"}, DmCondition{MarkerId{"z"}});
  u.conditions.emplace(Label{"l5"}, PredCondition{"gehen", {MarkerId{"e"}}});
  u.conditions.emplace(Label{"l6"}, PredCondition{"theme", {MarkerId{"e"}, MarkerId{"z"}}});
  u.conditions.emplace(Label{"l7"}, ConjCondition{Label{"l5"}, Label{"l6"}});
  u.constraints.insert(LeqConstraint{Label{"l7"}, Hole{"h0"}});
  u.constraints.insert(PresupConstraint{Label{"l4"}, Label{"l7"}});
  u.context = Context{MarkerId{"e"}, Label{"l7"}, Hole{"h0"}};
  return u;
}

}  // namespace

TEST_CASE("lud_merge takes disjoint unions and the left context") {
  IdGen gen;
  auto a = lex_noun("termin", gen);
  auto b = lex_noun("datum", gen);
  auto m = lud_merge(a, b, gen);
  CHECK(m.conditions.size() == 2);
  CHECK(m.context == a.context);
  CHECK(lud::testing::conditions_embed(a, m));
  CHECK(lud::testing::conditions_embed(b, m));
}

TEST_CASE("lud_merge with an empty representation is the unit") {
  IdGen gen;
  auto u = figure_das_geht();
  auto m = lud_merge(u, LudRepr{}, gen);
  CHECK(m.holes == u.holes);
  CHECK(m.conditions == u.conditions);
  CHECK(m.constraints == u.constraints);
  CHECK(m.context == u.context);
}

TEST_CASE("lud_merge survives self-merge via renaming") {
  IdGen gen;
  auto u = figure_das_geht();
  auto m = lud_merge(u, u, gen);
  CHECK(m.conditions.size() == 8);
  CHECK(m.holes.size() == 2);
  CHECK(well_formed(m).empty());
}

TEST_CASE("fun_arg_apply composes das geht from the lexical entries") {
  IdGen gen;
  auto das = lex_demonstrative(gen);
  auto geht = lex_intransitive("gehen", "theme", gen);
  auto s = fun_arg_apply(geht, das, gen);
  CHECK(well_formed(s).empty());
  CHECK(is_closed(s));
  CHECK(label_isomorphic(s, figure_das_geht()));
  // The demonstrative's marker fills the role's second argument.
  bool theme_bound = false;
  for (const auto& [l, c] : s.conditions) {
    if (auto* p = std::get_if<PredCondition>(&c)) {
      if (p->rel == "theme") {
        REQUIRE(p->args.size() == 2);
        theme_bound = std::holds_alternative<MarkerId>(p->args[1]);
      }
    }
  }
  CHECK(theme_bound);
}

TEST_CASE("fun_arg_apply consumes exactly one subcat slot") {
  IdGen gen;
  auto v = lex_transitive("brauchen", {"theme", "agent"}, gen);
  REQUIRE(v.subcat.size() == 2);
  auto np = lex_demonstrative(gen);
  auto vp = fun_arg_apply(v, np, gen);
  CHECK(vp.subcat.size() == 1);
}

TEST_CASE("fun_arg_apply rejects misuse") {
  IdGen gen;
  auto das = lex_demonstrative(gen);
  auto geht = lex_intransitive("gehen", "theme", gen);
  CHECK_THROWS_AS(fun_arg_apply(das, geht, gen), LudError);  // empty subcat
  auto jeder = lex_universal(gen);
  // A quantifier still carrying its scope slot cannot be a plain argument.
  CHECK_THROWS_AS(fun_arg_apply(geht, jeder, gen), LudError);
}

TEST_CASE("binding clash surfaces when ground contexts collide") {
  IdGen gen;
  auto geht = lex_intransitive("gehen", "theme", gen);
  auto np = fun_arg_apply(lex_universal(gen), lex_noun("termin", gen), gen);
  // The saturated-NP context has a ground main label; geht's subject slot
  // publishes its own. Plain application must clash rather than silently
  // rewire scope.
  LudRepr np_closed = np;
  np_closed.subcat.clear();
  CHECK_THROWS_AS(fun_arg_apply(geht, np_closed, gen), LudError);
  try {
    fun_arg_apply(geht, np_closed, gen);
  } catch (const LudError& e) {
    CHECK(e.kind == ErrorKind::binding_clash);
  }
}

TEST_CASE("lex_intransitive matches the geht entry shape") {
  IdGen gen;
  auto u = lex_intransitive("gehen", "theme", gen);
  CHECK(u.conditions.size() == 3);
  CHECK(u.holes.size() == 1);
  CHECK(u.subcat.size() == 1);
  CHECK(free_labels(u).size() == 1);
  // Fresh namespaces across two instantiations.
  auto v = lex_intransitive("gehen", "theme", gen);
  auto iu = all_identifiers(u);
  auto iv = all_identifiers(v);
  for (const auto& l : iv.labels) CHECK(!iu.labels.count(l));
  CHECK(label_isomorphic(u, v));
}

TEST_CASE("lex_transitive transcribes the macro") {
  IdGen gen;
  auto u = lex_transitive("vorschlagen", {"agent", "theme"}, gen);
  // basic pred + marker introduction + two roles + a three-conjunction group
  CHECK(u.conditions.size() == 7);
  int dm = 0, pred = 0, conj = 0;
  for (const auto& [l, c] : u.conditions) {
    if (std::holds_alternative<DmCondition>(c)) ++dm;
    if (std::holds_alternative<PredCondition>(c)) ++pred;
    if (std::holds_alternative<ConjCondition>(c)) ++conj;
  }
  CHECK(dm == 1);
  CHECK(pred == 3);
  CHECK(conj == 3);
  CHECK(u.subcat.size() == 2);
  auto free = free_labels(u);
  REQUIRE(free.size() == 1);
  CHECK(node_ref(u.context.main_label) == std::optional<NodeRef>(NodeRef{*free.begin()}));
  CHECK_THROWS_AS(lex_transitive("x", {"agent"}, gen), LudError);
}

TEST_CASE("applying a transitive verb to both arguments grounds both roles") {
  IdGen gen;
  auto v = lex_transitive("brauchen", {"theme", "agent"}, gen);
  auto obj = lex_demonstrative(gen);
  auto subj = lex_demonstrative(gen);
  auto s = fun_arg_apply(fun_arg_apply(v, obj, gen), subj, gen);
  CHECK(s.subcat.empty());
  CHECK(is_closed(s));
  std::map<std::string, MarkerTerm> role_arg;
  for (const auto& [l, c] : s.conditions) {
    if (auto* p = std::get_if<PredCondition>(&c)) {
      if (p->args.size() == 2) role_arg[p->rel] = p->args[1];
    }
  }
  REQUIRE(role_arg.count("theme"));
  REQUIRE(role_arg.count("agent"));
  CHECK(std::holds_alternative<MarkerId>(role_arg["theme"]));
  CHECK(std::holds_alternative<MarkerId>(role_arg["agent"]));
  CHECK(!(role_arg["theme"] == role_arg["agent"]));
}

TEST_CASE("lex_universal saturates into the one-reading sentence") {
  IdGen gen;
  auto np = fun_arg_apply(lex_universal(gen), lex_noun("termin", gen), gen);
  REQUIRE(np.subcat.size() == 1);
  auto s = apply_quantified_subject(np, lex_intransitive("gehen", "theme", gen), gen);
  CHECK(well_formed(s).empty());
  CHECK(is_closed(s));
  auto rs = readings(s);
  REQUIRE(rs.readings.size() == 1);
  REQUIRE(rs.readings[0].conds.size() == 1);
  CHECK(std::holds_alternative<DrsImplies>(rs.readings[0].conds[0].value));

  SUBCASE("the restrictor binds the quantified marker into the noun") {
    bool bound = false;
    for (const auto& [l, c] : s.conditions) {
      if (auto* p = std::get_if<PredCondition>(&c)) {
        if (p->rel == "termin") bound = std::holds_alternative<MarkerId>(p->args[0]);
      }
    }
    CHECK(bound);
  }
  SUBCASE("free labels are the implication and the verb group") {
    auto free = free_labels(s);
    CHECK(free.size() == 2);
    bool has_imp = false, has_verb_conj = false;
    for (const auto& l : free) {
      const auto& c = s.conditions.at(l);
      if (std::holds_alternative<ImpCondition>(c)) has_imp = true;
      if (std::holds_alternative<ConjCondition>(c)) has_verb_conj = true;
    }
    CHECK(has_imp);
    CHECK(has_verb_conj);
  }
}

TEST_CASE("lex_indefinite mirrors the universal with a conjunctive body") {
  IdGen gen;
  auto u = lex_indefinite(gen);
  bool has_conj_body = false;
  for (const auto& [l, c] : u.conditions) {
    if (auto* conj = std::get_if<ConjCondition>(&c)) {
      if (std::holds_alternative<Hole>(conj->right)) has_conj_body = true;
    }
  }
  CHECK(has_conj_body);

  auto np = fun_arg_apply(lex_indefinite(gen), lex_noun("datum", gen), gen);
  auto s = apply_quantified_subject(np, lex_intransitive("gehen", "theme", gen), gen);
  auto rs = readings(s);
  CHECK(rs.readings.size() == 1);
}

TEST_CASE("the two-quantifier derivation yields two readings") {
  IdGen gen;
  auto np1 = fun_arg_apply(lex_universal(gen), lex_noun("termin", gen), gen);
  auto np2 = fun_arg_apply(lex_indefinite(gen), lex_noun("datum", gen), gen);
  auto vp = apply_quantified_object(lex_transitive("brauchen", {"theme", "agent"}, gen),
                                    np2, gen);
  auto s = apply_quantified_subject(np1, vp, gen);
  auto plugs = enumerate_pluggings(s);
  CHECK(plugs.pluggings.size() == 2);
}

TEST_CASE("lex_noun is a single free predicate") {
  IdGen gen;
  auto u = lex_noun("termin", gen);
  CHECK(u.conditions.size() == 1);
  CHECK(u.holes.empty());
  CHECK(u.constraints.empty());
  CHECK(free_labels(u).size() == 1);
}

TEST_CASE("lex_demonstrative contributes the presupposed referent") {
  IdGen gen;
  auto das = lex_demonstrative(gen);
  CHECK(das.conditions.size() == 1);
  CHECK(das.constraints.size() == 1);
  CHECK(free_labels(das).empty());  // its dm label is presupposed
  CHECK(std::holds_alternative<MarkerId>(das.context.instance));
}

TEST_CASE("composition is monotone on the lexical derivations") {
  IdGen gen;
  auto das = lex_demonstrative(gen);
  auto geht = lex_intransitive("gehen", "theme", gen);
  auto s = fun_arg_apply(geht, das, gen);
  CHECK(lud::testing::conditions_embed(das, s));
  CHECK(lud::testing::conditions_embed(geht, s));
}

TEST_CASE("composition is monotone on random inputs") {
  std::mt19937 rng(40001);
  int fun_arg_cases = 0;
  for (int i = 0; i < 220; ++i) {
    auto a = lud::testing::random_repr(rng);
    auto b = lud::testing::random_repr(rng);
    IdGen gen;
    // Merge is always applicable.
    auto m = lud_merge(a, b, gen);
    CHECK(lud::testing::conditions_embed(a, m));
    CHECK(lud::testing::conditions_embed(b, m));
    // Give the left input an argument slot and apply it to the right one.
    LudRepr fun = a;
    IdGen gen2;
    Param inst = gen2.marker_param();
    Param main = gen2.node_param();
    Param top = gen2.node_param();
    fun.subcat.push_back(Context{inst, main, top});
    auto applied = fun_arg_apply(fun, b, gen);
    ++fun_arg_cases;
    CHECK(lud::testing::conditions_embed(a, applied));
    CHECK(lud::testing::conditions_embed(b, applied));
    CHECK(applied.subcat.size() == fun.subcat.size() - 1);
  }
  CHECK(fun_arg_cases > 0);
}

TEST_CASE("composition reads only the argument's context") {
  IdGen gen;
  auto geht = lex_intransitive("gehen", "theme", gen);
  // Two arguments with the same context but different internal conditions.
  LudRepr a;
  a.markers.emplace(MarkerId{"z"}, MarkerKind::entity);
  a.conditions.emplace(Label{"k1"}, PredCondition{"alpha", {MarkerId{"z"}}});
  a.context = Context{MarkerId{"z"}, Param{"?m9", ParamKind::node},
                      Param{"?t9", ParamKind::node}};
  LudRepr b;
  b.markers.emplace(MarkerId{"z"}, MarkerKind::entity);
  b.conditions.emplace(Label{"k1"}, PredCondition{"beta", {MarkerId{"z"}}});
  b.conditions.emplace(Label{"k2"}, PredCondition{"gamma", {MarkerId{"z"}}});
  b.context = Context{MarkerId{"z"}, Param{"?m9", ParamKind::node},
                      Param{"?t9", ParamKind::node}};

  IdGen g1, g2;
  auto ra = fun_arg_apply(geht, a, g1);
  auto rb = fun_arg_apply(geht, b, g2);
  // Everything outside the argument's own conditions is identical.
  auto strip = [](const LudRepr& r, const std::set<std::string>& drop) {
    LudRepr out = r;
    for (const auto& n : drop) out.conditions.erase(Label{n});
    out.markers.erase(MarkerId{"z"});
    return out;
  };
  CHECK(strip(ra, {"k1"}) == strip(rb, {"k1", "k2"}));
}

TEST_CASE("all lexical templates are well-formed after saturation") {
  IdGen gen;
  auto s1 = fun_arg_apply(lex_intransitive("gehen", "theme", gen),
                          lex_demonstrative(gen), gen);
  CHECK(well_formed(s1).empty());
  CHECK(is_closed(s1));
  auto np = fun_arg_apply(lex_universal(gen), lex_noun("termin", gen), gen);
  auto s2 = apply_quantified_subject(np, lex_intransitive("gehen", "theme", gen), gen);
  CHECK(well_formed(s2).empty());
  CHECK(is_closed(s2));
  auto np2 = fun_arg_apply(lex_indefinite(gen), lex_noun("datum", gen), gen);
  auto vp = apply_quantified_object(lex_transitive("brauchen", {"theme", "agent"}, gen),
                                    np2, gen);
  auto np3 = fun_arg_apply(lex_universal(gen), lex_noun("termin", gen), gen);
  auto s3 = apply_quantified_subject(np3, vp, gen);
  CHECK(well_formed(s3).empty());
  CHECK(is_closed(s3));
}

TEST_CASE("decorate_mood adds one hole and a free conjunction") {
  IdGen gen;
  auto das = lex_demonstrative(gen);
  auto geht = lex_intransitive("gehen", "theme", gen);
  auto s = fun_arg_apply(geht, das, gen);
  auto [decorated, mood] = decorate_mood(s, "decl", gen);
  CHECK(decorated.holes.size() == s.holes.size() + 1);
  CHECK(decorated.conditions.size() == s.conditions.size() + 2);
  CHECK(free_labels(decorated).size() == free_labels(s).size() + 1);
  CHECK(free_labels(decorated).count(mood) == 1);
  CHECK(well_formed(decorated).empty());
}
