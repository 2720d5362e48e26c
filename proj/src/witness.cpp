#include <deque>
#include <unordered_map>

#include "rootsat/saturation.hpp"

namespace rootsat {

std::optional<Trace> witness(const RootRewriteSystem& system, const Afta& saturated,
                             const Afta& input, const Term& term, std::size_t node_limit) {
  Acceptor in_saturated(saturated);
  Acceptor in_input(input);
  if (!in_saturated.accepts(term)) throw NotAccepted("term is not accepted: " + term.to_string());

  struct Parent {
    Term from;
    TraceStep step;
  };
  std::unordered_map<Term, std::optional<Parent>, TermHash> parent;
  std::deque<Term> queue{term};
  parent.emplace(term, std::nullopt);

  std::vector<std::size_t> saturated_deep;
  for (std::size_t i = 0; i < saturated.deep_transitions().size(); ++i)
    if (saturated.deep_transitions()[i].provenance.origin == Origin::Saturated &&
        saturated.is_final(saturated.deep_transitions()[i].target))
      saturated_deep.push_back(i);

  while (!queue.empty()) {
    Term u = queue.front();
    queue.pop_front();
    if (in_input.accepts(u)) {
      Trace trace;
      for (Term at = u; parent.at(at); at = parent.at(at)->from) trace.push_back(parent.at(at)->step);
      return Trace(trace.rbegin(), trace.rend());
    }
    for (std::size_t idx : saturated_deep) {
      if (!in_saturated.deep_applies(idx, u)) continue;
      const DeepTransition& d = saturated.deep_transitions()[idx];
      const RewriteRule* rule = system.find(d.rule);
      if (!rule) continue;
      auto sigma = match_root(rule->lhs, u);
      if (!sigma) continue;
      Term v = substitute(rule->rhs, *sigma);
      if (!in_saturated.accepts(v) || parent.count(v)) continue;
      parent.emplace(v, Parent{u, TraceStep{rule->label, *sigma}});
      if (parent.size() > node_limit) return std::nullopt;
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

std::optional<Trace> witness(const RootRewriteSystem& system, const SaturationResult& result,
                             const Term& term, std::size_t node_limit) {
  return witness(system, result.automaton, result.input, term, node_limit);
}

bool verify_trace(const RootRewriteSystem& system, const Afta& input, const Trace& trace,
                  const Term& term) {
  Term current = term;
  for (const auto& step : trace) {
    const RewriteRule* rule = system.find(step.rule);
    if (!rule) return false;
    auto sigma = match_root(rule->lhs, current);
    if (!sigma || *sigma != step.subst) return false;
    Term next = substitute(rule->rhs, *sigma);
    bool found = false;
    for (const auto& s : rewrite_once(system, current))
      if (s.rule == step.rule && s.term == next) found = true;
    if (!found) return false;
    current = next;
  }
  return accepts(input, current);
}

}  // namespace rootsat
