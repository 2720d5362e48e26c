#pragma once

#include <vector>

#include "rootsat/automaton.hpp"

namespace rootsat {

inline constexpr std::size_t kDefaultDealternationBudget = 1'000'000;

/// L = {term}; one state per distinct subterm.
Nfta singleton_automaton(AlphabetPtr alphabet, const Term& term);

/// One state per non-conf sort accepting every well-sorted term of it, plus a final conf
/// state accepting every configuration.
Nfta universal_automaton(AlphabetPtr alphabet);

/// Disjoint union: states of `b` are renamed apart, finals merged.
Afta disjoint_union(const Afta& a, const Afta& b);
Nfta disjoint_union(const Nfta& a, const Nfta& b);

/// Replaces each deep transition by plain transitions through fresh states along the pattern
/// spine. The result has no deep transitions and the same language.
Afta compile_deep(const Afta& automaton);

/// Equivalent plain nondeterministic automaton whose states are reachable subsets of the
/// input's states. Throws BudgetExceeded past `state_budget` subset states.
Nfta dealternate(const Afta& automaton, std::size_t state_budget = kDefaultDealternationBudget);

bool is_empty(const Nfta& automaton);
bool is_empty(const Afta& automaton, std::size_t state_budget = kDefaultDealternationBudget);

/// L = L(a) ∩ L(b) over reachable state pairs.
Nfta product(const Nfta& a, const Nfta& b);

/// Accepted conf terms of depth at most `max_depth`, in height-major canonical order.
std::vector<Term> enumerate_language(const Afta& automaton, std::size_t max_depth);

/// Copy keeping only states, finals and transitions with Original provenance.
Afta original_part(const Afta& automaton);

}  // namespace rootsat
