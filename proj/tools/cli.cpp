#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>

#include "rootsat/automaton_io.hpp"
#include "rootsat/automaton_ops.hpp"
#include "rootsat/encodings/frontend.hpp"
#include "rootsat/parse.hpp"
#include "rootsat/saturation.hpp"

namespace rootsat::cli {

namespace {

struct Options {
  std::string input;
  std::string automaton;
  std::string target;
  std::string saturated;
  std::string term;
  std::string output;
  std::string manifest;
  std::string target_out;
  std::size_t budget_transitions = SaturationConfig{}.transition_budget;
  std::size_t budget_derived = SaturationConfig{}.derived_budget;
  bool no_accel = false;
  std::size_t depth = 5;
  std::size_t steps = 8;
  bool witness = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("cannot write '" + path + "'");
}

/// Writes to `-o` when given, else to `out`.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) out << text;
  else write_file(o.output, text);
}

RootRewriteSystem load_system(const Document& doc) { return make_system(doc.alphabet, doc.rules); }

const Afta& need_automaton(const Document& doc, const std::string& path) {
  if (!doc.automaton) throw Error("'" + path + "' contains no automaton");
  return *doc.automaton;
}

void check_alphabets(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (!(*a == *b)) throw SortError("the system and automaton alphabets differ");
}

int cmd_encode(const Options& o, std::ostream& out) {
  enc::Frontend frontend = enc::read_frontend(o.input);
  enc::CompiledFrontend compiled = enc::compile_frontend(frontend);
  std::string manifest = compiled.manifest.to_string();
  std::string text = "# " + std::string(enc::to_string(frontend.family)) + " encoding\n";
  for (std::size_t start = 0; start < manifest.size();) {
    auto end = manifest.find('\n', start);
    text += "# " + manifest.substr(start, end - start) + "\n";
    start = end + 1;
  }
  text += write_system(compiled.system);
  emit(o, out, text);
  if (!o.manifest.empty()) write_file(o.manifest, manifest);
  if (!o.target_out.empty()) {
    if (!compiled.target) throw Error("the front-end file declares no target");
    write_file(o.target_out, write_document(compiled.target->automaton()));
  }
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  Document doc = read_document(o.input);
  SystemValidation v = validate_system(doc.alphabet, doc.rules);
  for (const auto& violation : v.violations)
    out << "violation " << violation.rule << " " << to_string(violation.kind) << ": " << violation.detail << "\n";
  if (!v.ok()) return kPropertyFails;
  out << "ok " << doc.rules.size() << " rules\n";
  return kOk;
}

int cmd_saturate(const Options& o, std::ostream& out, std::ostream& err) {
  Document sys_doc = read_document(o.input);
  Document aut_doc = read_document(o.automaton);
  RootRewriteSystem system = load_system(sys_doc);
  const Afta& input = need_automaton(aut_doc, o.automaton);
  check_alphabets(system.alphabet(), input.alphabet());
  SaturationConfig config;
  config.transition_budget = o.budget_transitions;
  config.derived_budget = o.budget_derived;
  config.acceleration = !o.no_accel;
  SaturationResult result = saturate(system, input, config);
  emit(o, out, write_document(result.automaton, system.rules()));
  std::ostream& report = o.output.empty() ? err : out;
  report << stats_report(result);
  if (result.status == SaturationStatus::BudgetExceeded) {
    err << "budget exceeded: " << result.budget_message << "; partial automaton written, it may miss terms\n";
    return kBudget;
  }
  return kOk;
}

bool has_provenance(const Afta& aut) {
  for (const auto& d : aut.deep_transitions())
    if (d.provenance.origin == Origin::Saturated) return true;
  return false;
}

void print_trace(std::ostream& out, const Term& start, const Trace& trace,
                 const RootRewriteSystem& system) {
  auto terms = replay(system, trace, start);
  out << "  " << start.to_string() << "\n";
  for (std::size_t i = 0; i < trace.size(); ++i)
    out << "  --" << trace[i].rule << "--> " << (*terms)[i + 1].to_string() << "\n";
}

int cmd_member(const Options& o, std::ostream& out) {
  Document doc = read_document(o.input);
  const Afta& aut = need_automaton(doc, o.input);
  Term t = parse_ground_term(o.term, *doc.alphabet);
  if (t.sort() != RankedAlphabet::kConf) throw ParseError("the term is not a configuration", 0);
  if (!accepts(aut, t)) {
    out << "no\n";
    return kPropertyFails;
  }
  out << "yes\n";
  if (!o.witness) return kOk;
  if (!has_provenance(aut) || doc.rules.empty()) {
    out << "witness: the automaton carries no saturation provenance\n";
    return kOk;
  }
  RootRewriteSystem system = load_system(doc);
  Afta input = original_part(aut);
  auto trace = witness(system, aut, input, t);
  if (!trace) {
    out << "witness: none found within the search limit\n";
    return kOk;
  }
  bool ok = verify_trace(system, input, *trace, t);
  out << "witness " << trace->size() << " steps, " << (ok ? "verified" : "NOT verified") << "\n";
  print_trace(out, t, *trace, system);
  return ok ? kOk : kPropertyFails;
}

int cmd_oracle_check(const Options& o, std::ostream& out) {
  Document sys_doc = read_document(o.input);
  Document target_doc = read_document(o.target);
  Document sat_doc = read_document(o.saturated);
  RootRewriteSystem system = load_system(sys_doc);
  const Afta& target = need_automaton(target_doc, o.target);
  const Afta& saturated = need_automaton(sat_doc, o.saturated);
  check_alphabets(system.alphabet(), target.alphabet());
  check_alphabets(system.alphabet(), saturated.alphabet());

  std::vector<Term> terms;
  if (o.depth > 0) terms = enumerate_terms(*system.alphabet(), RankedAlphabet::kConf, o.depth - 1);
  Acceptor in_target(target);
  Acceptor in_saturated(saturated);
  std::size_t failures = 0;
  auto report = [&](const char* direction, const Term& t) {
    ++failures;
    out << "counterexample " << direction << " " << t.to_string() << "\n";
  };
  for (const Term& t : terms) {
    bool accepted = in_saturated.accepts(t);
    if (in_target.accepts(t) && !accepted) report("target-not-contained", t);
    if (!accepted) {
      for (const auto& s : rewrite_once(system, t))
        if (in_saturated.accepts(s.term)) {
          report("closure", t);
          break;
        }
      auto reach = oracle_prestar_member(
          system, [&](const Term& u) { return in_target.accepts(u); }, t, o.steps);
      if (reach) report("oracle-reachable-but-rejected", t);
    } else {
      auto trace = witness(system, saturated, target, t);
      if (!trace || !verify_trace(system, target, *trace, t)) report("accepted-without-witness", t);
    }
  }
  out << "checked " << terms.size() << " terms, " << failures << " counterexamples\n";
  return failures ? kPropertyFails : kOk;
}

int cmd_dot(const Options& o, std::ostream& out) {
  Document doc = read_document(o.input);
  emit(o, out, to_dot(need_automaton(doc, o.input)));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Backward reachability for root-rewriting systems by tree-automata saturation"};
  app.name("rootsat");
  app.require_subcommand(1);
  Options o;

  auto* encode = app.add_subcommand("encode", "Compile a front-end file into a rewrite system");
  encode->add_option("frontend", o.input, "Front-end file")->required();
  encode->add_option("-o,--output", o.output, "System file (default: standard output)");
  encode->add_option("--manifest", o.manifest, "Write the command-to-rule manifest here");
  encode->add_option("--target-out", o.target_out, "Write the declared target automaton here");

  auto* validate = app.add_subcommand("validate", "Check a system against the rule class");
  validate->add_option("system", o.input, "System file")->required();

  auto* sat = app.add_subcommand("saturate", "Compute an automaton for pre* of a target");
  sat->add_option("system", o.input, "System file")->required();
  sat->add_option("automaton", o.automaton, "Target automaton file")->required();
  sat->add_option("-o,--output", o.output, "Saturated automaton (default: standard output)");
  sat->add_option("--budget-transitions", o.budget_transitions, "Maximum added transitions")
      ->check(CLI::PositiveNumber);
  sat->add_option("--budget-derived", o.budget_derived, "Maximum derived states")->check(CLI::PositiveNumber);
  sat->add_flag("--no-accel", o.no_accel, "Disable loop acceleration");

  auto* member = app.add_subcommand("member", "Test whether an automaton accepts a term");
  member->add_option("automaton", o.input, "Automaton file")->required();
  member->add_option("term", o.term, "Ground configuration term")->required();
  member->add_flag("--witness", o.witness, "Print a verified rewrite trace into the target");

  auto* oracle = app.add_subcommand("oracle-check", "Differential check against bounded search");
  oracle->add_option("system", o.input, "System file")->required();
  oracle->add_option("target", o.target, "Target automaton file")->required();
  oracle->add_option("saturated", o.saturated, "Saturated automaton file")->required();
  oracle->add_option("--depth", o.depth, "Maximum term height to enumerate");
  oracle->add_option("--steps", o.steps, "Step bound of the forward search");

  auto* dot = app.add_subcommand("dot", "Render an automaton as Graphviz");
  dot->add_option("automaton", o.input, "Automaton file")->required();
  dot->add_option("-o,--output", o.output, "DOT file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*encode) return cmd_encode(o, out);
    if (*validate) return cmd_validate(o, out);
    if (*sat) return cmd_saturate(o, out, err);
    if (*member) return cmd_member(o, out);
    if (*oracle) return cmd_oracle_check(o, out);
    if (*dot) return cmd_dot(o, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace rootsat::cli
