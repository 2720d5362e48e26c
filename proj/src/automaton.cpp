#include "rootsat/automaton.hpp"

#include <algorithm>

namespace rootsat {

StateSet make_state_set(std::vector<StateId> states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  return states;
}

StateSet unite(const StateSet& a, const StateSet& b) {
  StateSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const StateSet& a, const StateSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Afta::Afta(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
  by_symbol_.resize(alphabet_->symbol_count());
}

StateId Afta::add_state(std::string name, SortId sort) {
  if (sort >= alphabet_->sort_count()) throw SortError("unknown sort for state " + name);
  if (state_index_.count(name)) throw Error("duplicate state '" + name + "'");
  auto id = static_cast<StateId>(states_.size());
  state_index_.emplace(name, id);
  states_.push_back({std::move(name), sort});
  return id;
}

StateId Afta::add_fresh_state(const std::string& stem, SortId sort) {
  std::string name = stem;
  for (std::size_t k = 1; state_index_.count(name); ++k) name = stem + "_" + std::to_string(k);
  return add_state(std::move(name), sort);
}

void Afta::set_final(StateId state) {
  check_state(state);
  if (states_[state].sort != RankedAlphabet::kConf)
    throw SortError("final state '" + states_[state].name + "' must have sort conf");
  finals_ = unite(finals_, {state});
}

bool Afta::is_final(StateId s) const { return std::binary_search(finals_.begin(), finals_.end(), s); }

std::optional<StateId> Afta::find_state(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

void Afta::check_state(StateId s) const {
  if (s >= states_.size()) throw Error("unknown state id " + std::to_string(s));
}

std::size_t Afta::add_transition(PlainTransition t) {
  const Symbol& sym = alphabet_->symbol(t.symbol);
  if (t.children.size() != sym.arity())
    throw SortError("transition on '" + sym.name + "' has wrong arity");
  check_state(t.target);
  if (states_[t.target].sort != sym.result)
    throw SortError("transition on '" + sym.name + "' targets state '" + states_[t.target].name +
                    "' of the wrong sort");
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    t.children[i] = make_state_set(std::move(t.children[i]));
    for (StateId s : t.children[i]) {
      check_state(s);
      if (states_[s].sort != sym.args[i])
        throw SortError("state '" + states_[s].name + "' has the wrong sort for argument " +
                        std::to_string(i + 1) + " of '" + sym.name + "'");
    }
  }
  std::size_t idx = plain_.size();
  by_symbol_[t.symbol].push_back(idx);
  into_[{t.symbol, t.target}].push_back(idx);
  plain_.push_back(std::move(t));
  return idx;
}

std::size_t Afta::add_deep(DeepTransition t) {
  check_state(t.target);
  if (!t.pattern.valid() || t.pattern.is_var() ||
      alphabet_->symbol(t.pattern.symbol()).kind != SymbolKind::Control)
    throw SortError("deep transition pattern must be control-rooted");
  if (!is_linear(t.pattern)) throw SortError("deep transition pattern must be linear");
  if (states_[t.target].sort != RankedAlphabet::kConf)
    throw SortError("deep transition must target a conf state");
  auto vars = variables(t.pattern);
  for (auto& [v, set] : t.constraints) {
    auto it = vars.find(v);
    if (it == vars.end()) throw SortError("constraint on unknown variable ?" + v);
    set = make_state_set(std::move(set));
    for (StateId s : set) {
      check_state(s);
      if (states_[s].sort != it->second)
        throw SortError("state '" + states_[s].name + "' has the wrong sort for ?" + v);
    }
  }
  for (const auto& [v, sort] : vars) t.constraints.try_emplace(v);
  std::size_t idx = deep_.size();
  deep_into_[t.target].push_back(idx);
  deep_.push_back(std::move(t));
  return idx;
}

const std::vector<std::size_t>& Afta::plain_by_symbol(SymbolId symbol) const {
  return by_symbol_.at(symbol);
}

const std::vector<std::size_t>& Afta::plain_into(SymbolId symbol, StateId target) const {
  static const std::vector<std::size_t> none;
  auto it = into_.find({symbol, target});
  return it == into_.end() ? none : it->second;
}

const std::vector<std::size_t>& Afta::deep_into(StateId target) const {
  static const std::vector<std::size_t> none;
  auto it = deep_into_.find(target);
  return it == deep_into_.end() ? none : it->second;
}

bool Afta::is_nondeterministic_plain() const {
  if (!deep_.empty()) return false;
  for (const auto& t : plain_)
    for (const auto& c : t.children)
      if (c.size() != 1) return false;
  return true;
}

std::string Afta::state_set_string(const StateSet& set) const {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ',';
    out += states_.at(set[i]).name;
  }
  return out + "}";
}

Nfta::Nfta(Afta automaton) : automaton_(std::move(automaton)) {
  if (!automaton_.is_nondeterministic_plain())
    throw Error("automaton has conjunctive constraints or deep transitions; not an Nfta");
}

const StateSet& Acceptor::acc(const Term& term) {
  if (auto it = memo_.find(term); it != memo_.end()) return it->second;
  if (!term.is_ground()) throw SortError("acceptance is defined on ground terms only");
  const RankedAlphabet& alpha = *automaton_.alphabet();
  if (term.symbol() >= alpha.symbol_count() || alpha.symbol(term.symbol()).name != term.name())
    throw SortError("alphabet mismatch on symbol '" + term.name() + "'");
  std::vector<StateSet> kids;
  kids.reserve(term.children().size());
  for (const auto& c : term.children()) kids.push_back(acc(c));
  std::vector<StateId> found;
  for (std::size_t idx : automaton_.plain_by_symbol(term.symbol())) {
    const auto& t = automaton_.transitions()[idx];
    bool ok = true;
    for (std::size_t i = 0; ok && i < kids.size(); ++i) ok = is_subset(t.children[i], kids[i]);
    if (ok) found.push_back(t.target);
  }
  if (term.sort() == RankedAlphabet::kConf) {
    for (std::size_t idx = 0; idx < automaton_.deep_transitions().size(); ++idx)
      if (deep_applies(idx, term)) found.push_back(automaton_.deep_transitions()[idx].target);
  }
  return memo_.emplace(term, make_state_set(std::move(found))).first->second;
}

bool Acceptor::deep_applies(std::size_t index, const Term& term) {
  const auto& d = automaton_.deep_transitions().at(index);
  auto subst = match_root(d.pattern, term);
  if (!subst) return false;
  for (const auto& [v, req] : d.constraints) {
    if (req.empty()) continue;
    if (!is_subset(req, acc(subst->at(v)))) return false;
  }
  return true;
}

bool Acceptor::accepts(const Term& term) {
  if (term.sort() != RankedAlphabet::kConf) return false;
  const StateSet& s = acc(term);
  const StateSet& f = automaton_.finals();
  return std::find_first_of(s.begin(), s.end(), f.begin(), f.end()) != s.end();
}

StateSet acc_states(const Afta& automaton, const Term& term) {
  Acceptor a(automaton);
  return a.acc(term);
}

bool accepts(const Afta& automaton, const Term& term) {
  Acceptor a(automaton);
  return a.accepts(term);
}

}  // namespace rootsat
