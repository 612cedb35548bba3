#include <doctest.h>

#include <random>

#include "lud/compose.hpp"
#include "lud/model.hpp"
#include "support/generators.hpp"

using namespace lud;

namespace {

// The composed "das geht" entry, spelled out by hand.
LudRepr das_geht() {
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

TEST_CASE("well_formed accepts the das geht entry") {
  CHECK(well_formed(das_geht()).empty());
}

TEST_CASE("well_formed accepts the empty representation") {
  LudRepr u;  // context defaults to params, which are not dangling
  CHECK(well_formed(u).empty());
}

TEST_CASE("well_formed reports self-embedding and dangling references") {
  LudRepr u;
  u.conditions.emplace(Label{"l1"}, ConjCondition{Label{"l1"}, Label{"l2"}});
  u.context = Context{Param{"?i", ParamKind::marker}, Label{"l1"}, Label{"l1"}};
  auto diags = well_formed(u);
  REQUIRE(diags.size() == 2);
  CHECK(diags[0].code == "self-embedding");
  CHECK(diags[1].code == "dangling");
}

TEST_CASE("well_formed flags a leq with a non-hole right operand") {
  LudRepr u = das_geht();
  u.constraints.insert(LeqConstraint{Label{"l5"}, Label{"l6"}});
  auto diags = well_formed(u);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == "leq-right-not-hole");
}

TEST_CASE("well_formed flags a hole reused as a condition label") {
  LudRepr u = das_geht();
  u.conditions.emplace(Label{"h0"}, PredCondition{"p", {MarkerId{"z"}}});
  auto diags = well_formed(u);
  REQUIRE(!diags.empty());
  CHECK(diags[0].code == "hole-as-label");
}

TEST_CASE("well_formed reports cyclic embedding across conditions") {
  LudRepr u;
  u.conditions.emplace(Label{"a"}, ConjCondition{Label{"b"}, Label{"b"}});
  u.conditions.emplace(Label{"b"}, NegCondition{Label{"a"}});
  u.context = Context{Param{"?i", ParamKind::marker}, Label{"a"}, Label{"a"}};
  auto diags = well_formed(u);
  bool found = false;
  for (const auto& d : diags) found = found || d.code == "cyclic-embedding";
  CHECK(found);
  CHECK_THROWS_AS(structural_order(u), LudError);
}

TEST_CASE("structural_order reads condition arguments directly") {
  LudRepr u;
  u.markers.emplace(MarkerId{"x"}, MarkerKind::entity);
  u.conditions.emplace(Label{"l5"}, PredCondition{"p", {MarkerId{"x"}}});
  u.conditions.emplace(Label{"l6"}, PredCondition{"q", {MarkerId{"x"}}});
  u.conditions.emplace(Label{"l7"}, ConjCondition{Label{"l5"}, Label{"l6"}});
  u.context = Context{MarkerId{"x"}, Label{"l7"}, Label{"l7"}};
  auto pairs = structural_order(u);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0] == std::pair<NodeRef, Label>{NodeRef{Label{"l5"}}, Label{"l7"}});
  CHECK(pairs[1] == std::pair<NodeRef, Label>{NodeRef{Label{"l6"}}, Label{"l7"}});
}

TEST_CASE("structural_order covers the jeder entry shape") {
  // ll: lk -> hi together with lk: lj and lm.
  LudRepr u;
  u.holes.insert(Hole{"hi"});
  u.markers.emplace(MarkerId{"x"}, MarkerKind::entity);
  u.conditions.emplace(Label{"lj"}, DmCondition{MarkerId{"x"}});
  u.conditions.emplace(Label{"lm"}, PredCondition{"p", {MarkerId{"x"}}});
  u.conditions.emplace(Label{"lk"}, ConjCondition{Label{"lj"}, Label{"lm"}});
  u.conditions.emplace(Label{"ll"}, ImpCondition{Label{"lk"}, Hole{"hi"}});
  u.context = Context{MarkerId{"x"}, Label{"ll"}, Hole{"hi"}};
  auto pairs = structural_order(u);
  std::set<std::pair<NodeRef, Label>> got(pairs.begin(), pairs.end());
  std::set<std::pair<NodeRef, Label>> want = {
      {NodeRef{Label{"lk"}}, Label{"ll"}},
      {NodeRef{Hole{"hi"}}, Label{"ll"}},
      {NodeRef{Label{"lj"}}, Label{"lk"}},
      {NodeRef{Label{"lm"}}, Label{"lk"}},
  };
  CHECK(got == want);
}

TEST_CASE("structural_order of an atomic representation is empty") {
  LudRepr u;
  u.markers.emplace(MarkerId{"x"}, MarkerKind::entity);
  u.conditions.emplace(Label{"l1"}, PredCondition{"termin", {MarkerId{"x"}}});
  u.context = Context{MarkerId{"x"}, Label{"l1"}, Label{"l1"}};
  CHECK(structural_order(u).empty());
}

TEST_CASE("subordination_closure of das geht") {
  auto u = das_geht();
  auto order = subordination_closure(u);
  CHECK(order.antisymmetric());
  CHECK(order.leq(NodeRef{Label{"l7"}}, NodeRef{Hole{"h0"}}));
  CHECK(order.leq(NodeRef{Label{"l5"}}, NodeRef{Hole{"h0"}}));
  CHECK(order.leq(NodeRef{Label{"l5"}}, NodeRef{Label{"l7"}}));
  CHECK(!order.leq(NodeRef{Hole{"h0"}}, NodeRef{Label{"l7"}}));
  // The presupposed label takes part in no ordering.
  CHECK(!order.leq(NodeRef{Label{"l4"}}, NodeRef{Hole{"h0"}}));

  SUBCASE("with the plugging the hole collapses onto l7") {
    std::map<Hole, Label> p{{Hole{"h0"}, Label{"l7"}}};
    auto plugged = subordination_closure(u, &p);
    CHECK(plugged.antisymmetric());
    CHECK(plugged.leq(NodeRef{Label{"l7"}}, NodeRef{Hole{"h0"}}));
  }
}

TEST_CASE("subordination_closure reports constraint cycles") {
  LudRepr u;
  u.markers.emplace(MarkerId{"x"}, MarkerKind::entity);
  u.conditions.emplace(Label{"l1"}, PredCondition{"p", {MarkerId{"x"}}});
  u.conditions.emplace(Label{"l2"}, PredCondition{"q", {MarkerId{"x"}}});
  u.constraints.insert(LtConstraint{Label{"l1"}, Label{"l2"}});
  u.constraints.insert(LtConstraint{Label{"l2"}, Label{"l1"}});
  u.context = Context{MarkerId{"x"}, Label{"l1"}, Label{"l1"}};
  CHECK(!subordination_closure(u).antisymmetric());
}

TEST_CASE("top of das geht is the hole") {
  CHECK(top(das_geht()) == NodeRef{Hole{"h0"}});
}

TEST_CASE("top of a single condition is its label") {
  LudRepr u;
  u.markers.emplace(MarkerId{"x"}, MarkerKind::entity);
  u.conditions.emplace(Label{"l1"}, PredCondition{"termin", {MarkerId{"x"}}});
  u.context = Context{MarkerId{"x"}, Label{"l1"}, Label{"l1"}};
  CHECK(top(u) == NodeRef{Label{"l1"}});
}

TEST_CASE("top throws on two unrelated roots") {
  LudRepr u;
  u.markers.emplace(MarkerId{"x"}, MarkerKind::entity);
  u.conditions.emplace(Label{"l1"}, PredCondition{"p", {MarkerId{"x"}}});
  u.conditions.emplace(Label{"l2"}, PredCondition{"q", {MarkerId{"x"}}});
  u.context = Context{MarkerId{"x"}, Label{"l1"}, Label{"l1"}};
  CHECK_THROWS_AS(top(u), LudError);
  try {
    top(u);
  } catch (const LudError& e) {
    CHECK(e.kind == ErrorKind::ambiguous_top);
  }
}

TEST_CASE("free_labels excludes embedded and presupposed labels") {
  auto u = das_geht();
  CHECK(free_labels(u) == std::set<Label>{Label{"l7"}});
}

TEST_CASE("free_labels of the empty representation is empty") {
  CHECK(free_labels(LudRepr{}).empty());
}

TEST_CASE("rename_apart on a self-merge yields disjoint copies") {
  auto u = das_geht();
  IdGen gen;
  auto [a, b] = rename_apart(u, u, gen);
  CHECK(a == u);
  auto ia = all_identifiers(a);
  auto ib = all_identifiers(b);
  for (const auto& l : ib.labels) CHECK(!ia.labels.count(l));
  for (const auto& h : ib.holes) CHECK(!ia.holes.count(h));
  for (const auto& m : ib.markers) CHECK(!ia.markers.count(m));
  CHECK(label_isomorphic(b, u));
}

TEST_CASE("rename_apart leaves disjoint inputs unchanged") {
  auto u = das_geht();
  LudRepr v;
  v.markers.emplace(MarkerId{"y"}, MarkerKind::entity);
  v.conditions.emplace(Label{"k1"}, PredCondition{"datum", {MarkerId{"y"}}});
  v.context = Context{MarkerId{"y"}, Label{"k1"}, Label{"k1"}};
  IdGen gen;
  auto [a, b] = rename_apart(u, v, gen);
  CHECK(a == u);
  CHECK(b == v);
}

TEST_CASE("rename_apart preserves structure on random representations") {
  std::mt19937 rng(7101);
  for (int i = 0; i < 60; ++i) {
    auto u = lud::testing::random_repr(rng);
    auto v = lud::testing::random_repr(rng);
    IdGen gen;
    auto [a, b] = rename_apart(u, v, gen);
    CHECK(a == u);
    CHECK(label_isomorphic(b, v));
    CHECK(well_formed(b).empty());
    CHECK(free_labels(b).size() == free_labels(v).size());
    auto ia = all_identifiers(a);
    auto ib = all_identifiers(b);
    for (const auto& l : ib.labels) CHECK(!ia.labels.count(l));
    for (const auto& h : ib.holes) CHECK(!ia.holes.count(h));
    for (const auto& m : ib.markers) CHECK(!ia.markers.count(m));
  }
}

TEST_CASE("closure is monotone in the constraint set") {
  std::mt19937 rng(7102);
  for (int i = 0; i < 60; ++i) {
    auto u = lud::testing::random_repr(rng);
    std::vector<Label> labels;
    for (const auto& [l, c] : u.conditions) labels.push_back(l);
    if (u.holes.empty()) continue;
    auto before = subordination_closure(u);
    LudRepr v = u;
    v.constraints.insert(
        LeqConstraint{labels[i % labels.size()], *v.holes.begin()});
    auto after = subordination_closure(v);
    for (const auto& [a, b] : before.pairs()) CHECK(after.leq(a, b));
  }
}

TEST_CASE("top is never the left operand of a subordination constraint") {
  std::mt19937 rng(7103);
  int checked = 0;
  for (int i = 0; i < 120 && checked < 40; ++i) {
    auto u = lud::testing::random_repr(rng);
    NodeRef t{Label{""}};
    try {
      t = top(u);
    } catch (const LudError&) {
      continue;
    }
    ++checked;
    for (const auto& k : u.constraints) {
      if (auto* leq = std::get_if<LeqConstraint>(&k))
        CHECK(node_ref(leq->below) != std::optional<NodeRef>(t));
      if (auto* lt = std::get_if<LtConstraint>(&k))
        CHECK(node_ref(lt->below) != std::optional<NodeRef>(t));
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("free labels never occur as condition arguments") {
  std::mt19937 rng(7104);
  for (int i = 0; i < 60; ++i) {
    auto u = lud::testing::random_repr(rng);
    auto free = free_labels(u);
    for (const auto& [l, c] : u.conditions) {
      for (const auto& a : node_args(c)) {
        if (auto* al = std::get_if<Label>(&a)) CHECK(!free.count(*al));
      }
    }
  }
}

TEST_CASE("label_isomorphic distinguishes structurally different entries") {
  auto u = das_geht();
  CHECK(label_isomorphic(u, u));
  LudRepr v = u;
  v.conditions.erase(Label{"l4"});
  v.conditions.emplace(Label{"l4"}, PredCondition{"dm2", {MarkerId{"z"}}});
  CHECK(!label_isomorphic(u, v));
  LudRepr w = u;
  w.constraints.erase(PresupConstraint{Label{"l4"}, Label{"l7"}});
  w.constraints.insert(PresupConstraint{Label{"l4"}, Label{"l5"}});
  CHECK(!label_isomorphic(u, w));
}
