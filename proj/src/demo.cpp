#include "lud/demo.hpp"

#include "lud/textio.hpp"

namespace lud {

const std::string& demo_grammar_text() {
  static const std::string text = R"(# Desk-scale demo grammar.
# rule LHS -> RHS : feature equations : semantic action
rule s -> np vp : 1.agr=2.agr : apply_subject(1,2)
rule np -> det n : 1.agr=2.agr, 0.agr=1.agr : fun_arg(1,2)
rule np -> pron : 0.agr=1.agr : head(1)
rule vp -> v : 1.val=intrans, 0.agr=1.agr : head(1)
rule vp -> v np : 1.val=trans, 0.agr=1.agr : apply_object(1,2)
)";
  return text;
}

const std::string& demo_lexicon_text() {
  static const std::string text = R"(# Full-form demo lexicon.
# word SURFACE CATEGORY attr=value ... : macro(args)
word das pron agr=sg : demonstrative
word geht v agr=sg val=intrans : intransitive(gehen,theme)
word gehen v agr=pl val=intrans : intransitive(gehen,theme)
word braucht v agr=sg val=trans : transitive(brauchen,theme,agent)
word kennt v agr=sg val=trans : transitive(kennen,theme,agent)
word jeder det agr=sg : universal
word jedes det agr=sg : universal
word ein det agr=sg : indefinite
word einen det agr=sg : indefinite
word termin n agr=sg : noun(termin)
word termine n agr=pl : noun(termin)
word datum n agr=sg : noun(datum)
)";
  return text;
}

Grammar demo_grammar() {
  auto res = parse_grammar_text(demo_grammar_text());
  if (!res.grammar)
    throw LudError(ErrorKind::grammar_error,
                   "built-in grammar failed to load:\n" + format_diagnostics(res.diagnostics));
  return *res.grammar;
}

Lexicon demo_lexicon() {
  auto res = parse_lexicon_text(demo_lexicon_text());
  if (!res.lexicon)
    throw LudError(ErrorKind::grammar_error,
                   "built-in lexicon failed to load:\n" + format_diagnostics(res.diagnostics));
  return *res.lexicon;
}

const std::vector<std::string>& demo_corpus() {
  static const std::vector<std::string> corpus = {
      "das geht",
      "jeder termin geht",
      "ein termin geht",
      "jedes datum geht",
      "ein datum geht",
      "jeder termin braucht ein datum",
      "ein termin braucht ein datum",
      "jedes datum braucht einen termin",
      "jeder termin braucht jedes datum",
      "das braucht ein datum",
      "jeder termin kennt das",
      "ein termin kennt jedes datum",
  };
  return corpus;
}

}  // namespace lud
