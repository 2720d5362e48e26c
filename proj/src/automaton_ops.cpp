#include "rootsat/automaton_ops.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace rootsat {

Nfta singleton_automaton(AlphabetPtr alphabet, const Term& term) {
  if (!term.is_ground() || term.sort() != RankedAlphabet::kConf)
    throw SortError("singleton automaton needs a ground conf term, got " + term.to_string());
  Afta aut(alphabet);
  std::unordered_map<Term, StateId, TermHash> state_of;
  std::function<StateId(const Term&)> build = [&](const Term& t) -> StateId {
    if (auto it = state_of.find(t); it != state_of.end()) return it->second;
    PlainTransition tr;
    tr.symbol = t.symbol();
    for (const auto& c : t.children()) tr.children.push_back({build(c)});
    StateId s = aut.add_fresh_state("s" + std::to_string(state_of.size()), t.sort());
    tr.target = s;
    aut.add_transition(std::move(tr));
    state_of.emplace(t, s);
    return s;
  };
  aut.set_final(build(term));
  return Nfta(std::move(aut));
}

Nfta universal_automaton(AlphabetPtr alphabet) {
  Afta aut(alphabet);
  std::vector<StateId> of_sort(alphabet->sort_count());
  for (SortId s = 0; s < alphabet->sort_count(); ++s)
    of_sort[s] = aut.add_state("all_" + alphabet->sort_name(s), s);
  aut.set_final(of_sort[RankedAlphabet::kConf]);
  for (SymbolId f = 0; f < alphabet->symbol_count(); ++f) {
    PlainTransition tr;
    tr.symbol = f;
    for (SortId a : alphabet->symbol(f).args) tr.children.push_back({of_sort[a]});
    tr.target = of_sort[alphabet->symbol(f).result];
    aut.add_transition(std::move(tr));
  }
  return Nfta(std::move(aut));
}

Afta disjoint_union(const Afta& a, const Afta& b) {
  if (!(*a.alphabet() == *b.alphabet())) throw SortError("union of automata over different alphabets");
  Afta out = a;
  std::vector<StateId> remap(b.state_count());
  for (StateId s = 0; s < b.state_count(); ++s)
    remap[s] = out.add_fresh_state(b.state(s).name, b.state(s).sort);
  auto map_set = [&](const StateSet& set) {
    StateSet r;
    for (StateId s : set) r.push_back(remap[s]);
    return make_state_set(std::move(r));
  };
  for (StateId f : b.finals()) out.set_final(remap[f]);
  for (const auto& t : b.transitions()) {
    PlainTransition c = t;
    for (auto& set : c.children) set = map_set(set);
    c.target = remap[t.target];
    out.add_transition(std::move(c));
  }
  for (const auto& t : b.deep_transitions()) {
    DeepTransition c = t;
    for (auto& [v, set] : c.constraints) set = map_set(set);
    c.target = remap[t.target];
    out.add_deep(std::move(c));
  }
  return out;
}

Nfta disjoint_union(const Nfta& a, const Nfta& b) {
  return Nfta(disjoint_union(a.automaton(), b.automaton()));
}

Afta compile_deep(const Afta& automaton) {
  Afta out(automaton.alphabet());
  for (StateId s = 0; s < automaton.state_count(); ++s)
    out.add_state(automaton.state(s).name, automaton.state(s).sort);
  for (StateId f : automaton.finals()) out.set_final(f);
  for (const auto& t : automaton.transitions()) out.add_transition(t);

  std::map<std::pair<Term, Constraints>, StateId> spine_states;
  std::function<StateSet(const Term&, const Constraints&)> child_constraint;
  std::function<StateId(const Term&, const Constraints&)> spine_state =
      [&](const Term& spine, const Constraints& theta) -> StateId {
    Constraints local;
    for (const auto& [v, sort] : variables(spine)) local[v] = theta.at(v);
    auto key = std::make_pair(spine, local);
    if (auto it = spine_states.find(key); it != spine_states.end()) return it->second;
    PlainTransition tr;
    tr.symbol = spine.symbol();
    tr.provenance.origin = Origin::Derived;
    for (const auto& c : spine.children()) tr.children.push_back(child_constraint(c, local));
    StateId s = out.add_fresh_state("spine" + std::to_string(spine_states.size()), spine.sort());
    tr.target = s;
    out.add_transition(std::move(tr));
    spine_states.emplace(std::move(key), s);
    return s;
  };
  child_constraint = [&](const Term& child, const Constraints& theta) -> StateSet {
    if (child.is_var()) return theta.at(child.name());
    return {spine_state(child, theta)};
  };
  for (const auto& d : automaton.deep_transitions()) {
    PlainTransition tr;
    tr.symbol = d.pattern.symbol();
    tr.target = d.target;
    tr.provenance = d.provenance;
    for (const auto& c : d.pattern.children()) tr.children.push_back(child_constraint(c, d.constraints));
    out.add_transition(std::move(tr));
  }
  return out;
}

namespace {

std::string subset_name(const Afta& aut, const StateSet& set) {
  std::string name = "q_";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) name += '+';
    name += aut.state(set[i]).name;
  }
  return name;
}

}  // namespace

Nfta dealternate(const Afta& automaton, std::size_t state_budget) {
  const Afta plain = compile_deep(automaton);
  const RankedAlphabet& alpha = *plain.alphabet();
  Afta out(plain.alphabet());
  std::map<std::pair<SortId, StateSet>, StateId> index;
  std::vector<std::vector<StateId>> by_sort(alpha.sort_count());
  std::vector<StateSet> subset_of;

  auto intern = [&](StateSet set, SortId sort) -> StateId {
    if (auto it = index.find({sort, set}); it != index.end()) return it->second;
    if (index.size() >= state_budget)
      throw BudgetExceeded("de-alternation exceeded its budget of " + std::to_string(state_budget) +
                           " states");
    StateId id = out.add_fresh_state(subset_name(plain, set), sort);
    if (std::any_of(set.begin(), set.end(), [&](StateId s) { return plain.is_final(s); }))
      out.set_final(id);
    index.emplace(std::make_pair(sort, set), id);
    by_sort[sort].push_back(id);
    subset_of.push_back(std::move(set));
    return id;
  };

  std::vector<std::size_t> seen_before(alpha.sort_count(), 0);
  bool grew = true;
  for (bool first_round = true; grew; first_round = false) {
    grew = false;
    std::vector<std::size_t> snapshot(alpha.sort_count());
    for (SortId s = 0; s < alpha.sort_count(); ++s) snapshot[s] = by_sort[s].size();
    for (SymbolId f = 0; f < alpha.symbol_count(); ++f) {
      const Symbol& sym = alpha.symbol(f);
      bool possible = true;
      for (SortId a : sym.args) possible = possible && snapshot[a] > 0;
      if (!possible) continue;
      std::vector<std::size_t> pick(sym.arity(), 0);
      while (true) {
        bool fresh = first_round;
        for (std::size_t i = 0; i < pick.size(); ++i)
          if (pick[i] >= seen_before[sym.args[i]]) fresh = true;
        if (fresh) {
          std::vector<StateId> target;
          for (std::size_t idx : plain.plain_by_symbol(f)) {
            const auto& t = plain.transitions()[idx];
            bool ok = true;
            for (std::size_t i = 0; ok && i < pick.size(); ++i)
              ok = is_subset(t.children[i], subset_of[by_sort[sym.args[i]][pick[i]]]);
            if (ok) target.push_back(t.target);
          }
          std::size_t before = index.size();
          StateId to = intern(make_state_set(std::move(target)), sym.result);
          if (index.size() != before) grew = true;
          PlainTransition tr;
          tr.symbol = f;
          for (std::size_t i = 0; i < pick.size(); ++i) tr.children.push_back({by_sort[sym.args[i]][pick[i]]});
          tr.target = to;
          out.add_transition(std::move(tr));
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == snapshot[sym.args[i]]) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
    seen_before = snapshot;
  }
  return Nfta(std::move(out));
}

bool is_empty(const Nfta& nfta) {
  const Afta& aut = nfta.automaton();
  std::vector<bool> productive(aut.state_count(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& t : aut.transitions()) {
      if (productive[t.target]) continue;
      bool ok = std::all_of(t.children.begin(), t.children.end(), [&](const StateSet& c) {
        return std::all_of(c.begin(), c.end(), [&](StateId s) { return productive[s]; });
      });
      if (ok) productive[t.target] = changed = true;
    }
  }
  return std::none_of(aut.finals().begin(), aut.finals().end(),
                      [&](StateId f) { return productive[f]; });
}

bool is_empty(const Afta& automaton, std::size_t state_budget) {
  if (automaton.is_nondeterministic_plain()) return is_empty(Nfta(automaton));
  return is_empty(dealternate(automaton, state_budget));
}

Nfta product(const Nfta& a, const Nfta& b) {
  const Afta& x = a.automaton();
  const Afta& y = b.automaton();
  if (!(*x.alphabet() == *y.alphabet())) throw SortError("product of automata over different alphabets");
  Afta out(x.alphabet());
  std::map<std::pair<StateId, StateId>, StateId> pairs;
  std::set<std::pair<std::size_t, std::size_t>> done;
  bool changed = true;
  while (changed) {
    changed = false;
    for (SymbolId f = 0; f < x.alphabet()->symbol_count(); ++f) {
      for (std::size_t i : x.plain_by_symbol(f)) {
        for (std::size_t j : y.plain_by_symbol(f)) {
          if (done.count({i, j})) continue;
          const auto& tx = x.transitions()[i];
          const auto& ty = y.transitions()[j];
          PlainTransition tr;
          tr.symbol = f;
          bool ok = true;
          for (std::size_t k = 0; ok && k < tx.children.size(); ++k) {
            auto it = pairs.find({tx.children[k].front(), ty.children[k].front()});
            if (it == pairs.end()) ok = false;
            else tr.children.push_back({it->second});
          }
          if (!ok) continue;
          auto key = std::make_pair(tx.target, ty.target);
          auto it = pairs.find(key);
          if (it == pairs.end()) {
            StateId s = out.add_fresh_state(x.state(tx.target).name + "x" + y.state(ty.target).name,
                                            x.state(tx.target).sort);
            if (x.is_final(tx.target) && y.is_final(ty.target)) out.set_final(s);
            it = pairs.emplace(key, s).first;
          }
          tr.target = it->second;
          out.add_transition(std::move(tr));
          done.insert({i, j});
          changed = true;
        }
      }
    }
  }
  return Nfta(std::move(out));
}

std::vector<Term> enumerate_language(const Afta& automaton, std::size_t max_depth) {
  Acceptor acceptor(automaton);
  std::vector<Term> out;
  for (auto& t : enumerate_terms(*automaton.alphabet(), RankedAlphabet::kConf, max_depth))
    if (acceptor.accepts(t)) out.push_back(std::move(t));
  return out;
}

Afta original_part(const Afta& automaton) {
  Afta out(automaton.alphabet());
  for (StateId s = 0; s < automaton.state_count(); ++s)
    out.add_state(automaton.state(s).name, automaton.state(s).sort);
  for (StateId f : automaton.finals()) out.set_final(f);
  for (const auto& t : automaton.transitions())
    if (t.provenance.origin == Origin::Original) out.add_transition(t);
  for (const auto& t : automaton.deep_transitions())
    if (t.provenance.origin == Origin::Original) out.add_deep(t);
  return out;
}

}  // namespace rootsat
