#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lud/cli.hpp"
#include "lud/demo.hpp"
#include "lud/drs.hpp"
#include "lud/textio.hpp"

namespace py = pybind11;
using namespace lud;

namespace {

LudRepr parse_or_throw(const std::string& text) {
  auto res = parse_lud_text(text);
  if (!res.repr) throw py::value_error(format_diagnostics(res.diagnostics));
  return *res.repr;
}

std::map<std::string, std::string> plugging_to_dict(const Plugging& p) {
  std::map<std::string, std::string> out;
  for (const auto& [h, l] : p.assignment) out[h.name] = l.name;
  return out;
}

Plugging plugging_from_dict(const std::map<std::string, std::string>& d) {
  Plugging p;
  for (const auto& [h, l] : d) p.assignment.emplace(Hole{h}, Label{l});
  return p;
}

std::vector<LudRepr> analyze(const std::string& sentence, const std::string& grammar_text,
                             const std::string& lexicon_text) {
  Grammar g;
  Lexicon lex;
  if (grammar_text.empty()) {
    g = demo_grammar();
  } else {
    auto res = parse_grammar_text(grammar_text);
    if (!res.grammar) throw py::value_error(format_diagnostics(res.diagnostics));
    g = *res.grammar;
  }
  if (lexicon_text.empty()) {
    lex = demo_lexicon();
  } else {
    auto res = parse_lexicon_text(lexicon_text);
    if (!res.lexicon) throw py::value_error(format_diagnostics(res.diagnostics));
    lex = *res.lexicon;
  }
  auto parsed = parse(tokenize(sentence), g, lex);
  if (!parsed.diagnostics.empty())
    throw py::value_error(format_diagnostics(parsed.diagnostics));
  std::vector<LudRepr> out;
  for (const auto& d : parsed.derivations) {
    auto derived = derive_lud(d, g, lex);
    if (derived.repr) out.push_back(*derived.repr);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_lud, m) {
  m.doc() = "underspecified discourse representations: construction, scope "
            "resolution and DRT interpretation";

  py::register_exception<LudError>(m, "LudError");

  py::class_<LudRepr>(m, "LudRepr")
      .def(py::init<>())
      .def("__str__", [](const LudRepr& u) { return serialize_lud(u); })
      .def("__repr__",
           [](const LudRepr& u) {
             return "<LudRepr: " + std::to_string(u.conditions.size()) + " condition(s), " +
                    std::to_string(u.holes.size()) + " hole(s)>";
           })
      .def("__eq__", [](const LudRepr& a, const LudRepr& b) { return a == b; })
      .def_property_readonly("holes",
                             [](const LudRepr& u) {
                               std::vector<std::string> out;
                               for (const auto& h : u.holes) out.push_back(h.name);
                               return out;
                             })
      .def_property_readonly("labels", [](const LudRepr& u) {
        std::vector<std::string> out;
        for (const auto& [l, c] : u.conditions) out.push_back(l.name);
        return out;
      });

  py::class_<Drs>(m, "Drs")
      .def("__str__", [](const Drs& k) { return render_box(k); })
      .def("__repr__",
           [](const Drs& k) {
             return "<Drs: |" + std::to_string(k.domain.size()) + " marker(s), " +
                    std::to_string(k.conds.size()) + " condition(s)|>";
           })
      .def("__eq__", [](const Drs& a, const Drs& b) { return a == b; })
      .def_property_readonly("domain", [](const Drs& k) {
        std::vector<std::string> out;
        for (const auto& m : k.domain) out.push_back(m.name);
        return out;
      });

  m.def("parse_lud_text", &parse_or_throw, py::arg("text"),
        "Parse the line-oriented LUD format; raises ValueError on diagnostics.");
  m.def("serialize_lud", &serialize_lud, py::arg("u"));
  m.def("well_formed", [](const LudRepr& u) {
    std::vector<std::string> out;
    for (const auto& d : well_formed(u)) out.push_back(d.code + ": " + d.message);
    return out;
  });
  m.def("free_labels", [](const LudRepr& u) {
    std::vector<std::string> out;
    for (const auto& l : free_labels(u)) out.push_back(l.name);
    return out;
  });
  m.def("top", [](const LudRepr& u) { return name_of(top(u)); });
  m.def("label_isomorphic", &label_isomorphic, py::arg("a"), py::arg("b"));

  m.def("enumerate_pluggings", [](const LudRepr& u) {
    auto res = enumerate_pluggings(u);
    if (!res.diagnostics.empty())
      throw py::value_error(format_diagnostics(res.diagnostics));
    std::vector<std::map<std::string, std::string>> out;
    for (const auto& p : res.pluggings) out.push_back(plugging_to_dict(p));
    return out;
  });
  m.def("brute_force_pluggings", [](const LudRepr& u) {
    auto res = brute_force_pluggings(u);
    if (!res.diagnostics.empty())
      throw py::value_error(format_diagnostics(res.diagnostics));
    std::vector<std::map<std::string, std::string>> out;
    for (const auto& p : res.pluggings) out.push_back(plugging_to_dict(p));
    return out;
  });
  m.def("is_admissible", [](const LudRepr& u, const std::map<std::string, std::string>& p) {
    return is_admissible(u, plugging_from_dict(p));
  });
  m.def("filter_mood", [](const LudRepr& u, const std::string& mood,
                          const std::vector<std::map<std::string, std::string>>& ps) {
    std::vector<Plugging> in;
    for (const auto& p : ps) in.push_back(plugging_from_dict(p));
    std::vector<std::map<std::string, std::string>> out;
    for (const auto& p : filter_mood(u, Label{mood}, in)) out.push_back(plugging_to_dict(p));
    return out;
  });

  m.def("interpret", [](const LudRepr& u, const std::map<std::string, std::string>& p) {
    return interpret(u, plugging_from_dict(p));
  });
  m.def("readings", [](const LudRepr& u) {
    auto res = readings(u);
    if (!res.diagnostics.empty())
      throw py::value_error(format_diagnostics(res.diagnostics));
    return res.readings;
  });
  m.def("merge", [](const Drs& a, const Drs& b) { return merge(a, b); });
  m.def("render_box", &render_box, py::arg("drs"));

  m.def("analyze", &analyze, py::arg("sentence"), py::arg("grammar") = std::string(),
        py::arg("lexicon") = std::string(),
        "Tokenize, parse and compose; returns one representation per derivation.");
  m.def("demo_grammar_text", [] { return demo_grammar_text(); });
  m.def("demo_lexicon_text", [] { return demo_lexicon_text(); });
  m.def("demo_corpus", [] { return demo_corpus(); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });

  m.attr("__version__") = "0.1.0";
}
