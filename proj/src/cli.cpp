#include "lud/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "lud/demo.hpp"
#include "lud/drs.hpp"
#include "lud/textio.hpp"

namespace lud {

namespace {

struct CliFailure {
  int code;
};

std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "cannot open '" << path << "'\n";
    throw CliFailure{1};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LudRepr load_lud(const std::string& path, std::ostream& err) {
  auto res = parse_lud_text(read_file(path, err));
  if (!res.repr) {
    err << format_diagnostics(res.diagnostics);
    throw CliFailure{1};
  }
  return *res.repr;
}

Grammar load_grammar(const std::string& path, std::ostream& err) {
  if (path.empty()) return demo_grammar();
  auto res = parse_grammar_text(read_file(path, err));
  if (!res.grammar) {
    err << format_diagnostics(res.diagnostics);
    throw CliFailure{1};
  }
  return *res.grammar;
}

Lexicon load_lexicon(const std::string& path, std::ostream& err) {
  if (path.empty()) return demo_lexicon();
  auto res = parse_lexicon_text(read_file(path, err));
  if (!res.lexicon) {
    err << format_diagnostics(res.diagnostics);
    throw CliFailure{1};
  }
  return *res.lexicon;
}

int cmd_analyze(const std::string& sentence, const std::string& grammar_path,
                const std::string& lexicon_path, std::ostream& out, std::ostream& err) {
  Grammar g = load_grammar(grammar_path, err);
  Lexicon lex = load_lexicon(lexicon_path, err);
  auto parsed = parse(tokenize(sentence), g, lex);
  if (!parsed.diagnostics.empty()) {
    err << format_diagnostics(parsed.diagnostics);
    return 1;
  }
  bool first = true;
  bool any = false;
  std::vector<Diagnostic> rejected;
  for (const auto& d : parsed.derivations) {
    auto derived = derive_lud(d, g, lex);
    if (!derived.repr) {
      rejected.insert(rejected.end(), derived.diagnostics.begin(),
                      derived.diagnostics.end());
      continue;
    }
    if (!first) out << '\n';
    first = false;
    any = true;
    out << serialize_lud(*derived.repr);
  }
  if (!any) {
    if (!rejected.empty()) {
      err << format_diagnostics(rejected);
    } else {
      err << "no parse\n";
    }
    return 1;
  }
  return 0;
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  auto res = parse_lud_text(read_file(path, err));
  if (!res.repr) {
    err << format_diagnostics(res.diagnostics);
    return 1;
  }
  auto diags = well_formed(*res.repr);
  if (!diags.empty()) {
    out << format_diagnostics(diags);
    return 1;
  }
  return 0;
}

int cmd_plug(const std::string& path, const std::string& mood, bool oracle,
             std::ostream& out, std::ostream& err) {
  LudRepr u = load_lud(path, err);
  auto res = oracle ? brute_force_pluggings(u) : enumerate_pluggings(u);
  if (!res.diagnostics.empty()) {
    err << format_diagnostics(res.diagnostics);
    return 1;
  }
  std::vector<Plugging> ps = res.pluggings;
  if (!mood.empty()) {
    try {
      ps = filter_mood(u, Label{mood}, ps);
    } catch (const LudError& e) {
      err << e.what() << '\n';
      return 1;
    }
  }
  for (std::size_t i = 0; i < ps.size(); ++i)
    out << (i + 1) << ": " << to_display(ps[i]) << '\n';
  return 0;
}

int cmd_interpret(const std::string& path, int plugging_index, std::ostream& out,
                  std::ostream& err) {
  LudRepr u = load_lud(path, err);
  auto diags = well_formed(u);
  if (!diags.empty()) {
    err << format_diagnostics(diags);
    return 1;
  }
  auto plugs = enumerate_pluggings(u);
  if (!plugs.diagnostics.empty()) {
    err << format_diagnostics(plugs.diagnostics);
    return 1;
  }
  if (plugging_index > 0) {
    if (plugging_index > static_cast<int>(plugs.pluggings.size())) {
      err << "plugging index out of range (" << plugs.pluggings.size()
          << " available)\n";
      return 1;
    }
    out << render_box(interpret(u, plugs.pluggings[plugging_index - 1]));
    return 0;
  }
  for (std::size_t i = 0; i < plugs.pluggings.size(); ++i) {
    if (i) out << '\n';
    out << render_box(interpret(u, plugs.pluggings[i]));
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"underspecified discourse representations: construction, "
               "scope resolution and DRT interpretation"};
  app.require_subcommand(1);

  std::string sentence, grammar_path, lexicon_path;
  auto* analyze = app.add_subcommand("analyze", "parse a sentence and print its LUD");
  analyze->add_option("sentence", sentence, "sentence to analyze")->required();
  analyze->add_option("--grammar", grammar_path, "grammar file (default: built-in)");
  analyze->add_option("--lexicon", lexicon_path, "lexicon file (default: built-in)");

  std::string plug_file, mood;
  bool oracle = false;
  auto* plug = app.add_subcommand("plug", "list admissible pluggings of a .lud file");
  plug->add_option("file", plug_file, ".lud file")->required();
  plug->add_option("--mood", mood, "keep pluggings where this label stays maximal");
  plug->add_flag("--oracle", oracle, "use the brute-force enumerator");

  std::string interp_file;
  int plugging_index = 0;
  auto* interp = app.add_subcommand("interpret", "render DRS boxes for the readings");
  interp->add_option("file", interp_file, ".lud file")->required();
  interp->add_option("--plugging", plugging_index,
                     "1-based index of a single plugging to interpret");

  std::string check_file;
  auto* check = app.add_subcommand("check", "run well-formedness diagnostics");
  check->add_option("file", check_file, ".lud file")->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 wants reversed args
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (app.got_subcommand(analyze))
      return cmd_analyze(sentence, grammar_path, lexicon_path, out, err);
    if (app.got_subcommand(plug)) return cmd_plug(plug_file, mood, oracle, out, err);
    if (app.got_subcommand(interp))
      return cmd_interpret(interp_file, plugging_index, out, err);
    if (app.got_subcommand(check)) return cmd_check(check_file, out, err);
  } catch (const CliFailure& f) {
    return f.code;
  } catch (const LudError& e) {
    err << e.what() << '\n';
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace lud
