#pragma once

// Generators and independent oracles shared by the unit tests and the acceptance binary.

#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "rootsat/automaton_ops.hpp"
#include "rootsat/parse.hpp"
#include "rootsat/saturation.hpp"

namespace rootsat::testing {

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen); }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen); }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
  std::mt19937_64 gen;
};

inline AlphabetPtr alphabet_from(const std::string& lines) {
  auto a = std::make_shared<RankedAlphabet>();
  std::istringstream in(lines);
  for (std::string line; std::getline(in, line);)
    if (line.find_first_not_of(" \t") != std::string::npos) parse_alphabet_line(line, *a);
  return a;
}

inline RootRewriteSystem system_from(const AlphabetPtr& alpha, const std::vector<std::string>& rules) {
  std::vector<RewriteRule> parsed;
  for (const auto& r : rules) parsed.push_back(parse_rule_line(r, *alpha));
  return make_system(alpha, std::move(parsed));
}

inline Term term(const AlphabetPtr& alpha, const std::string& text) { return parse_term(text, *alpha); }

/// Union of singleton automata; written out independently of the library's target builders.
inline Afta language_of(const AlphabetPtr& alpha, const std::vector<Term>& terms) {
  Afta out(alpha);
  for (const auto& t : terms) out = disjoint_union(out, singleton_automaton(alpha, t).automaton());
  return out;
}

/// Whether some term satisfying `target` is reachable within k root steps. Memoized on
/// (term, k) and built only on rewrite_once, so it shares no code with saturation.
class BoundedReach {
 public:
  BoundedReach(const RootRewriteSystem& system, std::function<bool(const Term&)> target)
      : system_(system), target_(std::move(target)) {}

  bool within(const Term& t, std::size_t k) {
    Entry& e = memo_[t];
    if (!e.in_target_known) {
      e.in_target = target_(t);
      e.in_target_known = true;
    }
    if (e.in_target) return true;
    if (e.true_at <= k) return true;
    if (e.false_up_to >= static_cast<long>(k)) return false;
    if (k == 0) return false;
    for (const auto& s : rewrite_once(system_, t)) {
      if (within(s.term, k - 1)) {
        Entry& again = memo_[t];
        again.true_at = std::min(again.true_at, k);
        return true;
      }
    }
    Entry& again = memo_[t];
    again.false_up_to = std::max(again.false_up_to, static_cast<long>(k));
    return false;
  }

 private:
  struct Entry {
    bool in_target_known = false;
    bool in_target = false;
    std::size_t true_at = static_cast<std::size_t>(-1);
    long false_up_to = -1;
  };
  const RootRewriteSystem& system_;
  std::function<bool(const Term&)> target_;
  std::unordered_map<Term, Entry, TermHash> memo_;
};

struct ExactnessReport {
  std::size_t terms = 0;
  std::size_t accepted = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// The four exactness checks over every conf term of height <= max_height:
/// (a) oracle-positive within `steps` implies accepted, (b) accepted implies a witness that
/// verifies, (c) containment of the input language, (d) one-step closure.
/// With `partial` set only (b) and (c) are required.
inline ExactnessReport check_exactness(const RootRewriteSystem& system, const Afta& input,
                                       const Afta& saturated, std::size_t max_height, std::size_t steps,
                                       bool partial = false) {
  ExactnessReport report;
  Acceptor in_input(input);
  Acceptor in_saturated(saturated);
  BoundedReach oracle(system, [&](const Term& t) { return in_input.accepts(t); });
  auto fail = [&](const std::string& what, const Term& t) {
    if (report.failures.size() < 20) report.failures.push_back(what + " " + t.to_string());
    else if (report.failures.size() == 20) report.failures.push_back("...");
  };
  std::vector<Term> universe =
      max_height == 0 ? std::vector<Term>{}
                      : enumerate_terms(*system.alphabet(), RankedAlphabet::kConf, max_height - 1);
  for (const Term& t : universe) {
    ++report.terms;
    bool accepted = in_saturated.accepts(t);
    if (accepted) {
      ++report.accepted;
      auto trace = witness(system, saturated, input, t);
      if (!trace || !verify_trace(system, input, *trace, t)) fail("(b) no verified witness", t);
    }
    if (in_input.accepts(t) && !accepted) fail("(c) input term rejected", t);
    if (partial) continue;
    if (!accepted && oracle.within(t, steps)) fail("(a) oracle-reachable but rejected", t);
    if (!accepted)
      for (const auto& s : rewrite_once(system, t))
        if (in_saturated.accepts(s.term)) {
          fail("(d) closure broken", t);
          break;
        }
  }
  return report;
}

/// Random system in the root-rewriting class: up to 4 controls of arity 1 or 2, bot plus up
/// to 3 unary stack symbols, up to 6 rules whose sides have depth at most 2.
struct RandomInstance {
  RootRewriteSystem system;
  Afta target;
  std::string text;
};

inline RandomInstance random_instance(Rng& rng) {
  std::size_t controls = 1 + rng.below(4);
  std::size_t symbols = 1 + rng.below(3);
  std::size_t arity = 1 + rng.below(2);
  std::string lines = "bot : -> stack\n";
  std::vector<std::string> stack_syms, control_syms;
  for (std::size_t i = 0; i < symbols; ++i) {
    stack_syms.push_back(std::string(1, static_cast<char>('a' + i)));
    lines += stack_syms.back() + " : stack -> stack\n";
  }
  for (std::size_t i = 0; i < controls; ++i) {
    control_syms.push_back(std::string(1, static_cast<char>('p' + i)));
    lines += control_syms.back() + " :" + (arity == 1 ? " stack" : " stack * stack") + " -> conf\n";
  }
  AlphabetPtr alpha = alphabet_from(lines);
  SortId stack = *alpha->find_sort("stack");

  // Left child: variable, bot, a(var) or a(bot).
  auto lhs_child = [&](std::vector<Term>& vars) {
    std::size_t kind = rng.below(5);
    std::string v = "x" + std::to_string(vars.size());
    if (kind <= 1) {
      vars.push_back(Term::var(v, stack));
      return vars.back();
    }
    if (kind == 2) return Term::app(*alpha, "bot");
    if (kind == 3) {
      vars.push_back(Term::var(v, stack));
      return Term::app(*alpha, rng.pick(stack_syms), {vars.back()});
    }
    return Term::app(*alpha, rng.pick(stack_syms), {Term::app(*alpha, "bot")});
  };
  // Right child: a left variable, bot, or one symbol on top of either.
  auto rhs_child = [&](const std::vector<Term>& vars) {
    Term base = !vars.empty() && rng.chance(0.8) ? rng.pick(vars) : Term::app(*alpha, "bot");
    if (rng.chance(0.4)) return Term::app(*alpha, rng.pick(stack_syms), {base});
    return base;
  };

  std::size_t rule_count = 1 + rng.below(6);
  std::vector<RewriteRule> rules;
  for (std::size_t r = 0; r < rule_count; ++r) {
    std::vector<Term> vars;
    std::vector<Term> lk, rk;
    for (std::size_t i = 0; i < arity; ++i) lk.push_back(lhs_child(vars));
    for (std::size_t i = 0; i < arity; ++i) rk.push_back(rhs_child(vars));
    rules.push_back({"r" + std::to_string(r), Term::app(*alpha, rng.pick(control_syms), lk),
                     Term::app(*alpha, rng.pick(control_syms), rk)});
  }
  RootRewriteSystem system = make_system(alpha, rules);

  // Target: a few ground configurations of height <= 4.
  std::vector<Term> confs = enumerate_terms(*alpha, RankedAlphabet::kConf, 3);
  std::vector<Term> chosen;
  std::size_t n = 1 + rng.below(3);
  for (std::size_t i = 0; i < n; ++i) chosen.push_back(rng.pick(confs));
  Afta target = language_of(alpha, chosen);

  std::string text;
  for (const auto& r : system.rules()) text += r.to_string() + "\n";
  text += "target:";
  for (const auto& t : chosen) text += " " + t.to_string();
  return {system, target, text};
}

}  // namespace rootsat::testing
