// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "../tools/cli.hpp"
#include "encoding_support.hpp"
#include "rootsat/automaton_io.hpp"
#include "rootsat/encodings/frontend.hpp"

using namespace rootsat;
using namespace rootsat::testing;
namespace fs = std::filesystem;

namespace {

// Pinned bounds.
constexpr std::size_t kHeight = 5;            // conf terms of height <= 5
constexpr std::size_t kSteps = 8;             // forward-search step bound
constexpr std::size_t kRandomSystems = 150;   // generated systems
constexpr std::size_t kRandomFixpoints = 100; // of which at least this many must reach Fixpoint
constexpr std::uint64_t kSeed = 7;
constexpr double kTotalSeconds = 120;         // criterion 1 wall-clock limit
constexpr double kSampleSeconds = 10;         // criterion 8 per-sample limit
constexpr std::size_t kPairs = 1000;          // criteria 4 and 5 sample sizes

const std::vector<std::string> kSamples = {"pds_pop_loop.fe", "pds_calls.fe",       "ompds_pop2.fe",
                                           "ompds_chain.fe",  "apds_push2_pop2.fe", "apds_collapse.fe"};

SaturationConfig random_config() {
  SaturationConfig cfg;
  cfg.transition_budget = 2000;
  cfg.derived_budget = 1000;
  return cfg;
}

std::string sample_path(const std::string& name) { return std::string(ROOTSAT_SAMPLES) + "/" + name; }

struct Sample {
  std::string name;
  enc::CompiledFrontend compiled;
};

Sample load(const std::string& name) {
  return {name, enc::compile_frontend(enc::read_frontend(sample_path(name)))};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t terms = 0;
  for (const auto& name : kSamples) {
    Sample s = load(name);
    const Afta& target = s.compiled.target->automaton();
    auto res = saturate(s.compiled.system, target);
    if (res.status != SaturationStatus::Fixpoint) {
      o.fail(name + " did not reach a fixpoint");
      continue;
    }
    auto report = check_exactness(s.compiled.system, target, res.automaton, kHeight, kSteps);
    terms += report.terms;
    if (!report.ok()) o.fail(name + ": " + report.failures.front());
  }
  Rng rng(kSeed);
  std::size_t fixpoints = 0;
  for (std::size_t i = 0; i < kRandomSystems; ++i) {
    auto inst = random_instance(rng);
    auto res = saturate(inst.system, inst.target, random_config());
    bool fix = res.status == SaturationStatus::Fixpoint;
    fixpoints += fix;
    auto report = check_exactness(inst.system, inst.target, res.automaton, kHeight, kSteps, !fix);
    terms += report.terms;
    if (!report.ok()) o.fail("random system " + std::to_string(i) + ": " + report.failures.front());
  }
  double secs = seconds_since(t0);
  if (fixpoints < kRandomFixpoints)
    o.fail(std::to_string(fixpoints) + " random fixpoints, need " + std::to_string(kRandomFixpoints));
  if (secs >= kTotalSeconds) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) {
    std::ostringstream d;
    d << "6 samples + " << fixpoints << "/" << kRandomSystems << " random fixpoints ("
      << kRandomSystems - fixpoints << " budget-tripped, checked for soundness), " << terms
      << " terms, 0 counterexamples, " << static_cast<int>(secs) << " s";
    o.detail = d.str();
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  AlphabetPtr A = alphabet_from("bot : -> stack\na : stack -> stack\np : stack -> conf\n");
  auto stack = [&](std::size_t k) {
    Term t = Term::app(*A, "bot");
    for (std::size_t i = 0; i < k; ++i) t = Term::app(*A, "a", {t});
    return Term::app(*A, "p", {t});
  };
  auto R = system_from(A, {"m0: p(a(?x)) -> p(?x)"});
  Afta target = language_of(A, {stack(2)});
  auto res = saturate(R, target);
  if (res.status != SaturationStatus::Fixpoint) o.fail("no fixpoint with acceleration");
  BoundedReach oracle(R, [&](const Term& t) { return accepts(target, t); });
  for (std::size_t k = 0; k <= 10; ++k) {
    bool expected = oracle.within(stack(k), 10);
    if (expected != (k >= 2)) o.fail("oracle disagrees at k=" + std::to_string(k));
    if (accepts(res.automaton, stack(k)) != expected) o.fail("wrong answer at k=" + std::to_string(k));
  }
  if (o.pass) o.detail = "p(a^k bot) accepted iff k >= 2 for k <= 10, Fixpoint";
  return o;
}

Outcome criterion3() {
  Outcome o;
  AlphabetPtr A = alphabet_from(
      "bot : -> stack\na : stack -> stack\nb : stack -> stack\n"
      "p : stack * stack -> conf\nq : stack * stack -> conf\n");
  auto R = system_from(A, {"m0: p(?x1, b(?x2)) -> q(bot(), ?x2)"});
  Afta target = language_of(A, {parse_term("q(bot(), bot())", *A)});
  auto res = saturate(R, target);
  if (res.status != SaturationStatus::Fixpoint) o.fail("no fixpoint");
  BoundedReach oracle(R, [&](const Term& t) { return accepts(target, t); });
  auto words = enumerate_terms(*A, *A->find_sort("stack"), kHeight - 2);
  if (words.size() != 15) o.fail(std::to_string(words.size()) + " stack terms instead of 15");
  Term bot = parse_term("bot()", *A), bbot = parse_term("b(bot())", *A);
  for (const auto& w : words) {
    Term yes = Term::app(*A, "p", {w, bbot}), no = Term::app(*A, "p", {w, bot});
    if (!oracle.within(yes, kSteps) || oracle.within(no, kSteps)) o.fail("oracle disagrees on " + w.to_string());
    if (!accepts(res.automaton, yes)) o.fail("rejects " + yes.to_string());
    if (accepts(res.automaton, no)) o.fail("accepts " + no.to_string());
  }
  if (o.pass) o.detail = "15/15 p(w, b(bot())) accepted, 15/15 p(w, bot()) rejected";
  return o;
}

Outcome criterion4() {
  Outcome o;
  Sample s = load("apds_push2_pop2.fe");
  enc::Frontend frontend = enc::read_frontend(sample_path(s.name));
  const auto& spec = std::get<enc::ApdsSpec>(frontend.spec);
  enc::ApdsCodec codec(s.compiled.system.alphabet(), spec.order);
  Term s0 = codec.encode({"p", enc::initial_stack(spec)});
  Term r0 = codec.encode({"r", enc::initial_stack(spec)});
  const Afta& target = s.compiled.target->automaton();
  if (!accepts(target, r0)) o.fail("target is not {r(s0)}");
  auto res = saturate(s.compiled.system, target);
  if (res.status != SaturationStatus::Fixpoint) o.fail("no fixpoint");
  if (!accepts(res.automaton, s0)) o.fail("p(s0) rejected");
  BoundedReach oracle(s.compiled.system, [&](const Term& t) { return accepts(target, t); });
  if (!oracle.within(s0, 2)) o.fail("oracle finds no path from p(s0)");

  using K = enc::ApdsCommand::Kind;
  enc::ApdsSpec corpus = apds_corpus(2);
  Rng rng(kSeed);
  std::size_t checked = 0;
  while (checked < kPairs) {
    enc::ApdsConfig c = random_apds(rng, corpus);
    const enc::ApdsStack* top = top_one_stack(c.stack);
    if (!top || top->empty()) continue;
    std::size_t k = 1 + rng.below(corpus.order);
    auto pushed = step_direct(corpus, c, {K::Push1, c.control, c.control, "b", k});
    auto popped = step_direct(corpus, c, {K::Pop, c.control, c.control, "", k});
    if (!pushed || !popped) {
      o.fail("push1 or pop undefined on " + enc::format_config(c));
      break;
    }
    auto back = step_direct(corpus, *pushed, {K::Collapse, c.control, c.control, "", k});
    if (!back || !(*back == *popped)) o.fail("collapse differs from pop on " + enc::format_config(c));
    ++checked;
  }
  if (o.pass) o.detail = "p(s0) accepted; collapse(k) after push1(b,k) equals pop(k) on 1000 configs";
  return o;
}

Outcome criterion5() {
  Outcome o;
  Rng rng(kSeed);
  auto pds = pds_corpus();
  auto pds_enc = enc::encode_system_pds(pds);
  auto om = ompds_corpus(2);
  auto om_enc = enc::encode_system_ompds(om);
  auto ap = apds_corpus(2);
  auto ap_enc = enc::encode_system_apds(ap);
  for (std::size_t i = 0; i < kPairs; ++i) {
    for (const auto& p : {faithfulness_problem(pds, pds_enc, random_pds(rng, pds), rng.below(pds.commands.size())),
                          faithfulness_problem(om, om_enc, random_ompds(rng, om), rng.below(om.commands.size())),
                          faithfulness_problem(ap, ap_enc, random_apds(rng, ap), rng.below(ap.commands.size()))})
      if (!p.empty()) o.fail(p);
  }
  if (o.pass) o.detail = "1000 pairs per family commute; decode(encode(c)) = c";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t terms = 0;
  for (const auto& name : kSamples) {
    Sample s = load(name);
    auto res = saturate(s.compiled.system, s.compiled.target->automaton());
    Nfta plain = dealternate(res.automaton);
    const Afta& d = plain.automaton();
    if (d.has_deep()) o.fail(name + ": deep transitions remain");
    for (const auto& t : d.transitions())
      for (const auto& c : t.children)
        if (c.size() != 1) o.fail(name + ": non-singleton constraint");
    Acceptor x(res.automaton), y(d);
    for (const auto& t : enumerate_terms(*d.alphabet(), RankedAlphabet::kConf, kHeight - 1)) {
      ++terms;
      if (x.accepts(t) != y.accepts(t)) o.fail(name + ": disagreement on " + t.to_string());
    }
  }
  if (o.pass) o.detail = "6 samples, " + std::to_string(terms) + " terms, identical acceptance";
  return o;
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("rootsat_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

Outcome criterion7() {
  Outcome o;
  Scratch s;
  for (const auto& name : kSamples) {
    std::string sys1, sys2, sat1, sat2;
    if (cli({"encode", sample_path(name), "-o", s / "sys.txt", "--target-out", s / "target.txt"}) != 0)
      o.fail(name + ": encode failed");
    sys1 = slurp(s / "sys.txt");
    cli({"saturate", s / "sys.txt", s / "target.txt"}, &sat1);
    cli({"encode", sample_path(name), "-o", s / "sys.txt"});
    sys2 = slurp(s / "sys.txt");
    cli({"saturate", s / "sys.txt", s / "target.txt"}, &sat2);
    if (sys1 != sys2 || sat1 != sat2 || sat1.empty()) o.fail(name + ": outputs differ between runs");
  }
  // Pathological: the pop loop without acceleration grows derived states forever.
  if (cli({"encode", sample_path("pds_pop_loop.fe"), "-o", s / "loop.txt", "--target-out", s / "loop_target.txt"}) != 0)
    o.fail("encode failed");
  int code = cli({"saturate", s / "loop.txt", s / "loop_target.txt", "--no-accel", "--budget-derived", "200", "-o",
                  s / "partial.txt"});
  if (code != cli::kBudget) o.fail("budget trip exited " + std::to_string(code));
  Document sys = read_document(s / "loop.txt");
  Document target = read_document(s / "loop_target.txt");
  Document partial = read_document(s / "partial.txt");
  auto report = check_exactness(make_system(sys.alphabet, sys.rules), *target.automaton, *partial.automaton, kHeight,
                                kSteps, true);
  if (!report.ok()) o.fail("partial automaton: " + report.failures.front());
  if (o.pass) o.detail = "byte-identical reruns on 6 samples; budget trip exits 3, partial result sound";
  return o;
}

Outcome criterion8() {
  Outcome o;
  Scratch s;
  double worst = 0;
  for (const auto& name : kSamples) {
    cli({"encode", sample_path(name), "-o", s / "sys.txt", "--target-out", s / "target.txt"});
    auto t0 = std::chrono::steady_clock::now();
    std::string report;
    int code = cli({"saturate", s / "sys.txt", s / "target.txt", "-o", s / "sat.txt"}, &report);
    double secs = seconds_since(t0);
    worst = std::max(worst, secs);
    if (code != 0 || report.find("status Fixpoint") == std::string::npos) o.fail(name + ": no fixpoint");
    for (const char* key : {"rounds ", "transitions_added ", "derived_states ", "milliseconds "})
      if (report.find(key) == std::string::npos) o.fail(name + ": stats report lacks " + key);
    if (secs >= kSampleSeconds) o.fail(name + " took " + std::to_string(secs) + " s");
  }
  if (o.pass) {
    std::ostringstream d;
    d << "slowest sample " << static_cast<int>(worst * 1000) << " ms, stats reported";
    o.detail = d.str();
  }
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"pre* exactness", criterion1},        {"PDS pop loop", criterion2},
      {"OMPDS destruction", criterion3},     {"APDS push2/pop2 and collapse", criterion4},
      {"encoding faithfulness", criterion5}, {"standard automaton form", criterion6},
      {"determinism and budgets", criterion7}, {"performance", criterion8},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
