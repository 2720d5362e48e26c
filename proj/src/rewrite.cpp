#include "rootsat/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

namespace rootsat {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonLinearLhs: return "NonLinearLhs";
    case ViolationKind::ControlBelowRoot: return "ControlBelowRoot";
    case ViolationKind::MissingControlRoot: return "MissingControlRoot";
    case ViolationKind::FreshRhsVariable: return "FreshRhsVariable";
    case ViolationKind::SortError: return "SortError";
    case ViolationKind::DuplicateLabel: return "DuplicateLabel";
  }
  return "?";
}

const RewriteRule* RootRewriteSystem::find(std::string_view label) const {
  auto it = std::lower_bound(rules_.begin(), rules_.end(), label,
                             [](const RewriteRule& r, std::string_view l) { return r.label < l; });
  if (it == rules_.end() || it->label != label) return nullptr;
  return &*it;
}

namespace {

bool control_below_root(const RankedAlphabet& alphabet, const Term& t, bool at_root) {
  if (t.is_var()) return false;
  if (!at_root && alphabet.symbol(t.symbol()).kind == SymbolKind::Control) return true;
  for (const auto& c : t.children())
    if (control_below_root(alphabet, c, false)) return true;
  return false;
}

bool control_rooted(const RankedAlphabet& alphabet, const Term& t) {
  return !t.is_var() && alphabet.symbol(t.symbol()).kind == SymbolKind::Control;
}

}  // namespace

SystemValidation SystemValidation::run(AlphabetPtr alphabet, std::vector<RewriteRule> rules) {
  SystemValidation out;
  std::set<std::string> labels;
  const RankedAlphabet& alpha = *alphabet;
  std::size_t depth = 0;
  for (const auto& rule : rules) {
    auto violate = [&](ViolationKind k, std::string detail) {
      out.violations.push_back({rule.label, k, std::move(detail)});
    };
    if (!labels.insert(rule.label).second) violate(ViolationKind::DuplicateLabel, "label reused");
    if (!rule.lhs.valid() || !rule.rhs.valid()) {
      violate(ViolationKind::SortError, "missing side");
      continue;
    }
    if (rule.lhs.sort() != RankedAlphabet::kConf || rule.rhs.sort() != RankedAlphabet::kConf)
      violate(ViolationKind::SortError, "both sides must have sort conf");
    for (const Term* side : {&rule.lhs, &rule.rhs}) {
      if (!control_rooted(alpha, *side))
        violate(ViolationKind::MissingControlRoot, side->to_string() + " is not control-rooted");
      if (control_below_root(alpha, *side, true))
        violate(ViolationKind::ControlBelowRoot, side->to_string());
    }
    if (!is_linear(rule.lhs)) violate(ViolationKind::NonLinearLhs, rule.lhs.to_string());
    auto lhs_vars = variables(rule.lhs);
    // Sorts of repeated occurrences are consistent only if collecting them yields no clash.
    for (const auto& occ : {rule.lhs, rule.rhs}) {
      std::map<std::string, SortId> seen;
      std::function<void(const Term&)> walk = [&](const Term& t) {
        if (t.is_var()) {
          auto [it, fresh] = seen.emplace(t.name(), t.sort());
          if (!fresh && it->second != t.sort())
            violate(ViolationKind::SortError, "variable ?" + t.name() + " used at two sorts");
          return;
        }
        for (const auto& c : t.children()) walk(c);
      };
      walk(occ);
    }
    for (const auto& [v, sort] : variables(rule.rhs)) {
      auto it = lhs_vars.find(v);
      if (it == lhs_vars.end())
        violate(ViolationKind::FreshRhsVariable, "?" + v + " does not occur on the left");
      else if (it->second != sort)
        violate(ViolationKind::SortError, "?" + v + " changes sort across the rule");
    }
    depth = std::max(depth, rule.lhs.depth());
  }
  if (!out.violations.empty()) return out;
  RootRewriteSystem sys;
  sys.alphabet_ = std::move(alphabet);
  sys.rules_ = std::move(rules);
  std::sort(sys.rules_.begin(), sys.rules_.end(),
            [](const RewriteRule& a, const RewriteRule& b) { return a.label < b.label; });
  sys.lhs_depth_ = depth;
  out.system = std::move(sys);
  return out;
}

SystemValidation validate_system(AlphabetPtr alphabet, std::vector<RewriteRule> rules) {
  return SystemValidation::run(std::move(alphabet), std::move(rules));
}

RootRewriteSystem make_system(AlphabetPtr alphabet, std::vector<RewriteRule> rules) {
  auto result = validate_system(std::move(alphabet), std::move(rules));
  if (!result.ok()) {
    std::string msg = "invalid rewrite system:";
    for (const auto& v : result.violations)
      msg += "\n  " + v.rule + ": " + to_string(v.kind) + " (" + v.detail + ")";
    throw Error(msg);
  }
  return std::move(*result.system);
}

std::vector<Successor> rewrite_once(const RootRewriteSystem& system, const Term& term) {
  if (term.sort() != RankedAlphabet::kConf || !term.is_ground())
    throw SortError("rewrite_once expects a ground conf term, got " + term.to_string());
  std::vector<Successor> out;
  for (const auto& rule : system.rules()) {
    auto subst = match_root(rule.lhs, term);
    if (!subst) continue;
    Term next = substitute(rule.rhs, *subst);
    out.push_back({rule.label, std::move(*subst), std::move(next)});
  }
  return out;
}

std::optional<std::vector<Term>> replay(const RootRewriteSystem& system, const Trace& trace,
                                        const Term& start) {
  std::vector<Term> path{start};
  for (const auto& step : trace) {
    const RewriteRule* rule = system.find(step.rule);
    if (!rule) return std::nullopt;
    if (substitute(rule->lhs, step.subst) != path.back()) return std::nullopt;
    Term next = substitute(rule->rhs, step.subst);
    if (!next.is_ground()) return std::nullopt;
    path.push_back(std::move(next));
  }
  return path;
}

std::optional<Trace> oracle_prestar_member(const RootRewriteSystem& system,
                                           const std::function<bool(const Term&)>& in_target,
                                           const Term& start, std::size_t step_bound) {
  struct Parent {
    Term prev;
    TraceStep step;
  };
  std::unordered_map<Term, std::optional<Parent>, TermHash> seen;
  seen.emplace(start, std::nullopt);
  std::vector<Term> frontier{start};
  auto reconstruct = [&](Term t) {
    Trace trace;
    while (true) {
      const auto& p = seen.at(t);
      if (!p) break;
      trace.push_back(p->step);
      t = p->prev;
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
  };
  if (in_target(start)) return Trace{};
  for (std::size_t depth = 0; depth < step_bound && !frontier.empty(); ++depth) {
    std::vector<Term> next;
    for (const auto& t : frontier) {
      for (auto& succ : rewrite_once(system, t)) {
        if (seen.count(succ.term)) continue;
        seen.emplace(succ.term, Parent{t, {succ.rule, succ.subst}});
        if (in_target(succ.term)) return reconstruct(succ.term);
        next.push_back(std::move(succ.term));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace rootsat
