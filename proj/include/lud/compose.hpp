#pragma once

#include "lud/model.hpp"

namespace lud {

// Binding environment produced by unifying contexts. Params resolve to
// labels, holes, markers or other params; chains are followed on resolve.
class Subst {
 public:
  NodeTerm resolve(const NodeTerm& t) const;
  MarkerTerm resolve(const MarkerTerm& t) const;
  Context resolve(const Context& c) const;

  // All throw binding_clash on an attempt to equate distinct ground ids.
  void unify(const NodeTerm& a, const NodeTerm& b);
  void unify(const MarkerTerm& a, const MarkerTerm& b);
  void unify(const Context& a, const Context& b);

  LudRepr apply(const LudRepr& u) const;

 private:
  using Value = std::variant<Label, Hole, MarkerId, Param>;
  std::map<Param, Value> bind_;
  Value resolve_value(Value v) const;
  void bind(const Param& p, Value v);
};

// Disjoint union of two representations after renaming apart. The context
// comes from the left operand (the semantic head); pending subcat slots are
// concatenated, head's first.
LudRepr lud_merge(const LudRepr& u1, const LudRepr& u2, IdGen& gen);

// Functor-argument application: unifies the functor's first subcat slot with
// the argument's context and merges. The argument must be saturated (its own
// subcat consumed). Throws empty_subcat / unsaturated_argument /
// binding_clash.
LudRepr fun_arg_apply(const LudRepr& fun, const LudRepr& arg, IdGen& gen);

// Scope-taking subject: the quantifier's pending scope slot consumes the
// head's context while the head's first subcat slot binds the quantifier's
// instance (its main/top publications land in fresh sinks). The result keeps
// the quantifier's context.
LudRepr apply_quantified_subject(const LudRepr& quant, const LudRepr& head,
                                 IdGen& gen);

// Same wiring for a quantified object; the result keeps the head's context
// so further arguments can still be taken.
LudRepr apply_quantified_object(const LudRepr& head, const LudRepr& quant,
                                IdGen& gen);

// --- lexical macro library --------------------------------------------------

// Noun: one predicate over a parametric instance; main is its label.
LudRepr lex_noun(const std::string& rel, IdGen& gen);

// Intransitive verb: event predicate, one role condition linking the event
// to the subcategorized subject, a conjunction as main, and the top hole.
LudRepr lex_intransitive(const std::string& rel, const std::string& role,
                         IdGen& gen);

// Transitive verb: event predicate, marker introduction for the event, two
// role conditions bound via subcat (object slot first), grouped under one
// main label below the top hole. Throws arity_error unless two roles.
LudRepr lex_transitive(const std::string& rel,
                       const std::vector<std::string>& roles, IdGen& gen);

// Universal quantifier: dm(x), restrictor conjunction, implication into the
// scope hole; subcat = [restrictor slot, scope slot].
LudRepr lex_universal(IdGen& gen);

// Indefinite: like the universal with a conjunctive body.
LudRepr lex_indefinite(IdGen& gen);

// Demonstrative pronoun: dm(z) presupposed against the host's main label;
// the host's main/top arrive through this entry's own context params.
LudRepr lex_demonstrative(IdGen& gen);

// Adds a sentence-mood predicate conjoined with a fresh scope hole. The
// returned pair is (decorated representation, mood conjunction label); the
// label is what filter_mood expects.
std::pair<LudRepr, Label> decorate_mood(const LudRepr& u, const std::string& rel,
                                        IdGen& gen);

}  // namespace lud
