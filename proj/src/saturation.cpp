#include "rootsat/saturation.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

namespace rootsat {

const char* to_string(SaturationStatus status) {
  return status == SaturationStatus::Fixpoint ? "Fixpoint" : "BudgetExceeded";
}

namespace {

using Results = std::vector<RhsEvaluation>;

void merge_into(Constraints& into, const Constraints& from) {
  for (const auto& [v, set] : from) {
    auto& slot = into[v];
    slot = unite(slot, set);
  }
}

void dedup(Results& results) {
  std::set<Constraints> seen;
  Results out;
  for (auto& r : results)
    if (seen.insert(r.theta).second) out.push_back(std::move(r));
  results = std::move(out);
}

Results join(const Results& left, const Results& right) {
  Results out;
  for (const auto& a : left) {
    for (const auto& b : right) {
      RhsEvaluation r = a;
      merge_into(r.theta, b.theta);
      r.evidence.insert(r.evidence.end(), b.evidence.begin(), b.evidence.end());
      r.bindings.insert(r.bindings.end(), b.bindings.begin(), b.bindings.end());
      out.push_back(std::move(r));
    }
  }
  dedup(out);
  return out;
}

Results unit() { return Results{RhsEvaluation{}}; }

Constraints restrict_to(const Term& spine, const Constraints& constraints) {
  Constraints local;
  for (const auto& [v, sort] : variables(spine)) {
    auto it = constraints.find(v);
    local[v] = it == constraints.end() ? StateSet{} : it->second;
  }
  return local;
}

Constraints without(Constraints c, const std::string& variable) {
  c.erase(variable);
  return c;
}

}  // namespace

Saturator::Saturator(const RootRewriteSystem& system, const Afta& input, SaturationConfig config)
    : system_(system), config_(config), input_(input), automaton_(input) {
  if (config_.transition_budget == 0 || config_.derived_budget == 0)
    throw Error("saturation budgets must be positive");
  if (!(*input.alphabet() == *system.alphabet()))
    throw SortError("automaton and rewrite system use different alphabets");
  if (input.has_deep()) throw Error("saturation input must not contain deep transitions");
}

void Saturator::count_transition() {
  if (transitions_added_ >= config_.transition_budget)
    throw BudgetExceeded("transition budget of " + std::to_string(config_.transition_budget) +
                         " exhausted");
  ++transitions_added_;
}

std::optional<DerivedIdentity> Saturator::derived_identity(StateId state) const {
  auto it = identities_.find(state);
  if (it == identities_.end()) return std::nullopt;
  return it->second;
}

std::vector<StateSet> Saturator::spine_children(const Term& spine, const Constraints& constraints) {
  std::vector<StateSet> kids;
  for (const auto& c : spine.children()) {
    if (c.is_var()) {
      auto it = constraints.find(c.name());
      kids.push_back(it == constraints.end() ? StateSet{} : it->second);
    } else {
      kids.push_back({request_derived_state(c, constraints)});
    }
  }
  return kids;
}

StateId Saturator::request_derived_state(const Term& spine, const Constraints& constraints) {
  if (spine.is_var() || spine.sort() == RankedAlphabet::kConf)
    throw SortError("derived states need a stack-sorted application spine");
  Constraints local = restrict_to(spine, constraints);

  // spine[v := loop] is already inside the loop's language.
  for (const auto& [v, set] : local) {
    if (set.size() != 1) continue;
    auto it = identities_.find(set.front());
    if (it == identities_.end() || !it->second.loop) continue;
    const DerivedIdentity& id = it->second;
    if (id.loop_variable == v && id.spine == spine && id.constraints == without(local, v))
      return set.front();
  }

  auto key = std::make_pair(spine, local);
  if (auto it = derived_.find(key); it != derived_.end()) return it->second;
  if (derived_count_ >= config_.derived_budget)
    throw BudgetExceeded("derived-state budget of " + std::to_string(config_.derived_budget) +
                         " exhausted");
  ++derived_count_;
  StateId state = automaton_.add_fresh_state("$d" + std::to_string(derived_.size()), spine.sort());
  derived_.emplace(key, state);
  identities_.emplace(state, DerivedIdentity{spine, local, false, {}, 0});

  PlainTransition tr;
  tr.symbol = spine.symbol();
  tr.children = spine_children(spine, local);
  tr.target = state;
  tr.provenance.origin = Origin::Derived;
  count_transition();
  automaton_.add_transition(std::move(tr));
  return state;
}

StateId Saturator::materialize_loop(const Term& spine, const std::string& variable,
                                    const Constraints& constraints, StateId base) {
  Constraints others = without(restrict_to(spine, constraints), variable);
  for (const auto& [state, id] : identities_)
    if (id.loop && id.loop_variable == variable && id.loop_base == base && id.spine == spine &&
        id.constraints == others)
      return state;
  if (derived_count_ >= config_.derived_budget)
    throw BudgetExceeded("derived-state budget of " + std::to_string(config_.derived_budget) +
                         " exhausted");
  ++derived_count_;
  std::size_t loops = std::count_if(identities_.begin(), identities_.end(),
                                    [](const auto& e) { return e.second.loop; });
  StateId u = automaton_.add_fresh_state("$u" + std::to_string(loops), spine.sort());
  identities_.emplace(u, DerivedIdentity{spine, others, true, variable, base});

  Constraints entry = others;
  entry[variable] = {base};
  Constraints again = others;
  again[variable] = {u};
  for (const Constraints* c : {&entry, &again}) {
    PlainTransition tr;
    tr.symbol = spine.symbol();
    tr.children = spine_children(spine, *c);
    tr.target = u;
    tr.provenance.origin = Origin::Derived;
    count_transition();
    automaton_.add_transition(std::move(tr));
  }
  return u;
}

Results Saturator::eval_node(const Term& rhs, StateId state, bool at_root,
                             std::map<MemoKey, Results>& memo) {
  if (rhs.is_var()) {
    RhsEvaluation r;
    r.theta[rhs.name()] = {state};
    return {r};
  }
  MemoKey key{&rhs.children(), state};
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  Results out;
  const std::vector<std::size_t> plain = automaton_.plain_into(rhs.symbol(), state);
  for (std::size_t idx : plain) {
    const PlainTransition tr = automaton_.transitions()[idx];
    RhsEvaluation seed;
    seed.evidence.push_back({TransitionRef::Kind::Plain, idx});
    Results partial{seed};
    for (std::size_t i = 0; i < tr.children.size() && !partial.empty(); ++i)
      for (StateId s : tr.children[i]) {
        partial = join(partial, eval_node(rhs.children()[i], s, false, memo));
        if (partial.empty()) break;
      }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  if (at_root) {
    const std::vector<std::size_t> deep = automaton_.deep_into(state);
    for (std::size_t idx : deep) {
      const DeepTransition d = automaton_.deep_transitions()[idx];
      if (d.pattern.name() != rhs.name()) continue;
      RhsEvaluation seed;
      seed.evidence.push_back({TransitionRef::Kind::Deep, idx});
      Results partial = join({seed}, walk_deep(d.pattern, rhs, d.constraints, memo));
      out.insert(out.end(), partial.begin(), partial.end());
    }
  }
  dedup(out);
  memo.emplace(key, out);
  return out;
}

Results Saturator::walk_deep(const Term& pattern, const Term& rhs, const Constraints& theta,
                             std::map<MemoKey, Results>& memo) {
  if (pattern.is_var()) {
    Results acc = unit();
    auto it = theta.find(pattern.name());
    if (it != theta.end())
      for (StateId s : it->second) {
        acc = join(acc, eval_node(rhs, s, false, memo));
        if (acc.empty()) break;
      }
    return acc;
  }
  if (rhs.is_var()) {
    RhsEvaluation r;
    StateId d = request_derived_state(pattern, theta);
    r.theta[rhs.name()] = {d};
    r.bindings.push_back({rhs.name(), pattern, d});
    return {r};
  }
  if (pattern.name() != rhs.name()) return {};
  Results acc = unit();
  for (std::size_t i = 0; i < pattern.children().size() && !acc.empty(); ++i)
    acc = join(acc, walk_deep(pattern.children()[i], rhs.children()[i], theta, memo));
  return acc;
}

std::vector<RhsEvaluation> Saturator::eval_rhs(const Term& rhs, StateId state) {
  std::map<MemoKey, Results> memo;
  return eval_node(rhs, state, true, memo);
}

std::optional<RhsEvaluation> Saturator::accelerate(const RewriteRule& rule, StateId final_state,
                                                   const RhsEvaluation& evaluation) {
  // Compare against every earlier transition of the same rule and target: in a cycle
  // through several rules the root evidence belongs to another rule.
  for (std::size_t i : automaton_.deep_into(final_state)) {
    const DeepTransition& prev = automaton_.deep_transitions()[i];
    if (prev.provenance.origin != Origin::Saturated || prev.rule != rule.label) continue;
    if (auto widened = widen(prev, evaluation)) return widened;
  }
  return std::nullopt;
}

std::optional<RhsEvaluation> Saturator::widen(const DeepTransition& prev, const RhsEvaluation& evaluation) {
  // The new transition must differ from `prev` in exactly one variable x, with x's
  // singleton constraint wrapped once more in some spine.
  std::string changed;
  for (const auto& [v, set] : prev.constraints) {
    auto it = evaluation.theta.find(v);
    const StateSet& now = it == evaluation.theta.end() ? StateSet{} : it->second;
    if (now == set) continue;
    if (!changed.empty()) return std::nullopt;
    changed = v;
  }
  if (changed.empty()) return std::nullopt;
  const StateSet& before = prev.constraints.at(changed);
  const StateSet& after = evaluation.theta.at(changed);
  if (before.size() != 1 || after.size() != 1) return std::nullopt;

  for (const auto& b : evaluation.bindings) {
    if (b.variable != changed || b.state != after.front()) continue;
    auto id = identities_.find(b.state);
    if (id == identities_.end() || id->second.loop) continue;
    for (const auto& [spine_var, set] : id->second.constraints) {
      if (set != before) continue;
      StateId u = materialize_loop(b.spine, spine_var, id->second.constraints, before.front());
      RhsEvaluation out = evaluation;
      out.theta[changed] = {u};
      return out;
    }
  }
  return std::nullopt;
}

bool Saturator::emit(const RewriteRule& rule, StateId final_state, RhsEvaluation evaluation) {
  for (const auto& [v, sort] : variables(rule.lhs)) evaluation.theta.try_emplace(v);
  if (!seen_.insert({rule.label, final_state, evaluation.theta}).second) return false;
  std::optional<StateId> loop;
  bool wraps = std::any_of(evaluation.bindings.begin(), evaluation.bindings.end(), [&](const auto& b) {
    auto id = identities_.find(b.state);
    return id != identities_.end() && !id->second.loop;
  });
  if (config_.acceleration && wraps) {
    if (auto widened = accelerate(rule, final_state, evaluation)) {
      evaluation = std::move(*widened);
      for (const auto& [v, set] : evaluation.theta)
        if (set.size() == 1 && identities_.count(set.front()) && identities_.at(set.front()).loop)
          loop = set.front();
    }
  }
  Constraints theta;
  for (const auto& [v, sort] : variables(rule.lhs)) {
    auto it = evaluation.theta.find(v);
    theta[v] = it == evaluation.theta.end() ? StateSet{} : it->second;
  }
  if (emitted_.count({rule.label, final_state, theta})) return false;
  for (std::size_t idx : automaton_.deep_into(final_state)) {
    const DeepTransition& d = automaton_.deep_transitions()[idx];
    if (d.rule != rule.label) continue;
    bool subsumed = std::all_of(d.constraints.begin(), d.constraints.end(), [&](const auto& e) {
      return is_subset(e.second, theta.at(e.first));
    });
    if (subsumed) return false;
  }
  count_transition();
  emitted_.insert({rule.label, final_state, theta});
  DeepTransition d;
  d.pattern = rule.lhs;
  d.constraints = theta;
  d.target = final_state;
  d.rule = rule.label;
  d.provenance = {Origin::Saturated, justifications_.size()};
  std::size_t idx = automaton_.add_deep(std::move(d));
  justifications_.push_back(
      Justification{rule.label, final_state, std::move(theta), std::move(evaluation.evidence), idx, loop});
  return true;
}

bool Saturator::round() {
  bool changed = false;
  const StateSet finals = automaton_.finals();
  for (const auto& rule : system_.rules()) {
    for (StateId qf : finals) {
      auto evaluations = eval_rhs(rule.rhs, qf);
      for (auto& ev : evaluations) changed = emit(rule, qf, std::move(ev)) || changed;
    }
  }
  ++rounds_;
  return changed;
}

SaturationResult Saturator::run() {
  auto start = std::chrono::steady_clock::now();
  SaturationStatus status = SaturationStatus::Fixpoint;
  std::string message;
  try {
    while (true) {
      if (config_.max_rounds && rounds_ >= *config_.max_rounds) {
        status = SaturationStatus::BudgetExceeded;
        message = "round limit of " + std::to_string(*config_.max_rounds) + " reached";
        break;
      }
      if (!round()) break;
    }
  } catch (const BudgetExceeded& e) {
    status = SaturationStatus::BudgetExceeded;
    message = e.what();
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  SaturationResult result{automaton_, input_, status, {}, justifications_, message};
  result.stats.rounds = rounds_;
  result.stats.transitions_added = transitions_added_;
  result.stats.derived_states = derived_count_;
  result.stats.milliseconds = std::chrono::duration<double, std::milli>(elapsed).count();
  return result;
}

SaturationResult saturate(const RootRewriteSystem& system, const Afta& input,
                          const SaturationConfig& config) {
  Saturator engine(system, input, config);
  return engine.run();
}

std::string stats_report(const SaturationResult& result) {
  std::ostringstream out;
  out << "status " << to_string(result.status) << "\n"
      << "rounds " << result.stats.rounds << "\n"
      << "transitions_added " << result.stats.transitions_added << "\n"
      << "derived_states " << result.stats.derived_states << "\n"
      << "milliseconds " << static_cast<long long>(result.stats.milliseconds + 0.5) << "\n";
  return out.str();
}

}  // namespace rootsat
