#include "lud/compose.hpp"

#include <algorithm>

namespace lud {

// ---------------------------------------------------------------------------
// Subst
// ---------------------------------------------------------------------------

Subst::Value Subst::resolve_value(Value v) const {
  while (auto* p = std::get_if<Param>(&v)) {
    auto it = bind_.find(*p);
    if (it == bind_.end()) break;
    v = it->second;
  }
  return v;
}

NodeTerm Subst::resolve(const NodeTerm& t) const {
  Value v = std::visit([](const auto& x) -> Value { return x; }, t);
  v = resolve_value(v);
  if (auto* l = std::get_if<Label>(&v)) return *l;
  if (auto* h = std::get_if<Hole>(&v)) return *h;
  if (auto* p = std::get_if<Param>(&v)) return *p;
  throw LudError(ErrorKind::binding_clash,
                 "node position resolved to marker " + std::get<MarkerId>(v).name);
}

MarkerTerm Subst::resolve(const MarkerTerm& t) const {
  Value v = std::visit([](const auto& x) -> Value { return x; }, t);
  v = resolve_value(v);
  if (auto* m = std::get_if<MarkerId>(&v)) return *m;
  if (auto* p = std::get_if<Param>(&v)) return *p;
  throw LudError(ErrorKind::binding_clash,
                 "marker position resolved to a label or hole");
}

Context Subst::resolve(const Context& c) const {
  return Context{resolve(c.instance), resolve(c.main_label), resolve(c.top_hole)};
}

void Subst::bind(const Param& p, Value v) {
  if (auto* q = std::get_if<Param>(&v); q && *q == p) return;
  bind_.emplace(p, std::move(v));
}

namespace {

std::string value_name(const std::variant<Label, Hole, MarkerId, Param>& v) {
  return std::visit([](const auto& x) { return x.name; }, v);
}

}  // namespace

void Subst::unify(const NodeTerm& a, const NodeTerm& b) {
  Value va = resolve_value(std::visit([](const auto& x) -> Value { return x; }, a));
  Value vb = resolve_value(std::visit([](const auto& x) -> Value { return x; }, b));
  auto* pa = std::get_if<Param>(&va);
  auto* pb = std::get_if<Param>(&vb);
  if (pa && pb) {
    if (*pa != *pb) bind(*pa, *pb);
    return;
  }
  if (pa) {
    bind(*pa, vb);
    return;
  }
  if (pb) {
    bind(*pb, va);
    return;
  }
  if (va != vb)
    throw LudError(ErrorKind::binding_clash,
                   "cannot equate " + value_name(va) + " with " + value_name(vb));
}

void Subst::unify(const MarkerTerm& a, const MarkerTerm& b) {
  Value va = resolve_value(std::visit([](const auto& x) -> Value { return x; }, a));
  Value vb = resolve_value(std::visit([](const auto& x) -> Value { return x; }, b));
  auto* pa = std::get_if<Param>(&va);
  auto* pb = std::get_if<Param>(&vb);
  if (pa && pb) {
    if (*pa != *pb) bind(*pa, *pb);
    return;
  }
  if (pa) {
    bind(*pa, vb);
    return;
  }
  if (pb) {
    bind(*pb, va);
    return;
  }
  if (va != vb)
    throw LudError(ErrorKind::binding_clash,
                   "cannot equate " + value_name(va) + " with " + value_name(vb));
}

void Subst::unify(const Context& a, const Context& b) {
  unify(a.instance, b.instance);
  unify(a.main_label, b.main_label);
  unify(a.top_hole, b.top_hole);
}

LudRepr Subst::apply(const LudRepr& u) const {
  return transform_terms(
      u, [&](const NodeTerm& t) { return resolve(t); },
      [&](const MarkerTerm& t) { return resolve(t); });
}

// ---------------------------------------------------------------------------
// Composition operations
// ---------------------------------------------------------------------------

namespace {

LudRepr disjoint_union(const LudRepr& a, const LudRepr& b) {
  LudRepr out = a;
  out.holes.insert(b.holes.begin(), b.holes.end());
  out.markers.insert(b.markers.begin(), b.markers.end());
  out.conditions.insert(b.conditions.begin(), b.conditions.end());
  out.constraints.insert(b.constraints.begin(), b.constraints.end());
  return out;
}

}  // namespace

LudRepr lud_merge(const LudRepr& u1, const LudRepr& u2, IdGen& gen) {
  auto [a, b] = rename_apart(u1, u2, gen);
  LudRepr out = disjoint_union(a, b);
  out.context = a.context;
  out.subcat = a.subcat;
  out.subcat.insert(out.subcat.end(), b.subcat.begin(), b.subcat.end());
  return out;
}

LudRepr fun_arg_apply(const LudRepr& fun, const LudRepr& arg, IdGen& gen) {
  if (fun.subcat.empty())
    throw LudError(ErrorKind::empty_subcat, "functor has an empty subcat list");
  if (!arg.subcat.empty())
    throw LudError(ErrorKind::unsaturated_argument,
                   "argument still has pending subcat slots");
  auto [f, a] = rename_apart(fun, arg, gen);
  Subst s;
  s.unify(f.subcat.front(), a.context);
  LudRepr out = disjoint_union(f, a);
  out.context = f.context;
  out.subcat.assign(f.subcat.begin() + 1, f.subcat.end());
  return s.apply(out);
}

namespace {

LudRepr quantifier_apply(const LudRepr& quant, const LudRepr& head, IdGen& gen,
                         bool context_from_quant) {
  if (quant.subcat.empty())
    throw LudError(ErrorKind::empty_subcat, "quantifier has no pending scope slot");
  if (head.subcat.empty())
    throw LudError(ErrorKind::empty_subcat, "head has no argument slot to bind");
  auto [q, h] = rename_apart(quant, head, gen);
  Subst s;
  // The scope slot reads the head's context (main and top flow in).
  s.unify(q.subcat.front(), h.context);
  // The head's argument slot binds the quantifier's instance; the slot's
  // main/top publications drain into fresh sinks rather than the
  // quantifier's own (ground) context fields.
  Context carrier{q.context.instance, gen.node_param(), gen.node_param()};
  s.unify(h.subcat.front(), carrier);
  LudRepr out = disjoint_union(q, h);
  out.context = context_from_quant ? q.context : h.context;
  out.subcat.assign(q.subcat.begin() + 1, q.subcat.end());
  out.subcat.insert(out.subcat.end(), h.subcat.begin() + 1, h.subcat.end());
  return s.apply(out);
}

}  // namespace

LudRepr apply_quantified_subject(const LudRepr& quant, const LudRepr& head,
                                 IdGen& gen) {
  return quantifier_apply(quant, head, gen, /*context_from_quant=*/true);
}

LudRepr apply_quantified_object(const LudRepr& head, const LudRepr& quant,
                                IdGen& gen) {
  return quantifier_apply(quant, head, gen, /*context_from_quant=*/false);
}

// ---------------------------------------------------------------------------
// Lexical macros
// ---------------------------------------------------------------------------

LudRepr lex_noun(const std::string& rel, IdGen& gen) {
  LudRepr u;
  Param inst = gen.marker_param();
  Label l = gen.label();
  u.conditions.emplace(l, PredCondition{rel, {inst}});
  u.context = Context{inst, l, gen.node_param()};
  return u;
}

LudRepr lex_intransitive(const std::string& rel, const std::string& role,
                         IdGen& gen) {
  LudRepr u;
  MarkerId e = gen.marker(MarkerKind::event);
  u.markers.emplace(e, MarkerKind::event);
  Param subject = gen.marker_param();
  Label pred = gen.label();
  Label role_l = gen.label();
  Label group = gen.label();
  Hole top = gen.hole();
  u.holes.insert(top);
  u.conditions.emplace(pred, PredCondition{rel, {e}});
  u.conditions.emplace(role_l, PredCondition{role, {e, subject}});
  u.conditions.emplace(group, ConjCondition{pred, role_l});
  u.constraints.insert(LeqConstraint{group, top});
  u.context = Context{e, group, top};
  // The slot publishes this entry's main and top so a consumed argument can
  // anchor presuppositions against them.
  u.subcat.push_back(Context{subject, group, top});
  return u;
}

LudRepr lex_transitive(const std::string& rel,
                       const std::vector<std::string>& roles, IdGen& gen) {
  if (roles.size() != 2)
    throw LudError(ErrorKind::arity_error, "transitive verbs take exactly two roles");
  LudRepr u;
  MarkerId e = gen.marker(MarkerKind::event);
  u.markers.emplace(e, MarkerKind::event);
  Param arg1 = gen.marker_param();  // first-consumed argument (the object)
  Param arg2 = gen.marker_param();  // second-consumed argument (the subject)
  Label pred = gen.label();
  Label intro = gen.label();
  Label role1 = gen.label();
  Label role2 = gen.label();
  Hole top = gen.hole();
  u.holes.insert(top);
  u.conditions.emplace(pred, PredCondition{rel, {e}});
  u.conditions.emplace(intro, DmCondition{e});
  u.conditions.emplace(role1, PredCondition{roles[0], {e, arg1}});
  u.conditions.emplace(role2, PredCondition{roles[1], {e, arg2}});
  // group([pred, intro, role1, role2], main) as a left-nested conjunction.
  Label g1 = gen.label();
  Label g2 = gen.label();
  Label main = gen.label();
  u.conditions.emplace(g1, ConjCondition{pred, intro});
  u.conditions.emplace(g2, ConjCondition{g1, role1});
  u.conditions.emplace(main, ConjCondition{g2, role2});
  u.constraints.insert(LeqConstraint{main, top});
  u.context = Context{e, main, top};
  u.subcat.push_back(Context{arg1, main, top});
  u.subcat.push_back(Context{arg2, main, top});
  return u;
}

namespace {

LudRepr quantifier_template(bool universal, IdGen& gen) {
  LudRepr u;
  MarkerId x = gen.marker(MarkerKind::entity);
  u.markers.emplace(x, MarkerKind::entity);
  Label intro = gen.label();
  Label restr = gen.label();
  Label body = gen.label();
  Hole scope = gen.hole();
  u.holes.insert(scope);
  Param restr_main = gen.node_param();
  Param restr_top = gen.node_param();
  Param scope_inst = gen.marker_param();
  Param scope_main = gen.node_param();
  Param scope_top = gen.node_param();
  u.conditions.emplace(intro, DmCondition{x});
  u.conditions.emplace(restr, ConjCondition{intro, restr_main});
  if (universal)
    u.conditions.emplace(body, ImpCondition{restr, scope});
  else
    u.conditions.emplace(body, ConjCondition{restr, scope});
  u.constraints.insert(LeqConstraint{body, scope_top});
  u.constraints.insert(LeqConstraint{scope_main, scope});
  u.context = Context{x, body, scope_top};
  u.subcat.push_back(Context{x, restr_main, restr_top});  // restrictor
  u.subcat.push_back(Context{scope_inst, scope_main, scope_top});  // scope
  return u;
}

}  // namespace

LudRepr lex_universal(IdGen& gen) { return quantifier_template(true, gen); }

LudRepr lex_indefinite(IdGen& gen) { return quantifier_template(false, gen); }

LudRepr lex_demonstrative(IdGen& gen) {
  LudRepr u;
  MarkerId z = gen.marker(MarkerKind::entity);
  u.markers.emplace(z, MarkerKind::entity);
  Label intro = gen.label();
  Param host_main = gen.node_param();
  Param host_top = gen.node_param();
  u.conditions.emplace(intro, DmCondition{z});
  u.constraints.insert(PresupConstraint{intro, host_main});
  u.context = Context{z, host_main, host_top};
  return u;
}

std::pair<LudRepr, Label> decorate_mood(const LudRepr& u, const std::string& rel,
                                        IdGen& gen) {
  LudRepr out = u;
  Hole scope = gen.hole();
  while (out.holes.count(scope)) scope = gen.hole();
  Label mood_pred = gen.label();
  while (out.conditions.count(mood_pred)) mood_pred = gen.label();
  Label mood_conj = gen.label();
  while (out.conditions.count(mood_conj)) mood_conj = gen.label();
  out.holes.insert(scope);
  out.conditions.emplace(mood_pred, PredCondition{rel, {u.context.instance}});
  out.conditions.emplace(mood_conj, ConjCondition{mood_pred, scope});
  out.context = Context{u.context.instance, mood_conj, u.context.top_hole};
  return {out, mood_conj};
}

}  // namespace lud
