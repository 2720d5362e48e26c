#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rootsat/term.hpp"

namespace rootsat {

using StateId = std::uint32_t;
/// Sorted, duplicate-free. An empty set as a child constraint means "no requirement".
using StateSet = std::vector<StateId>;
/// Variable name -> states the bound subtree must be accepted at (all of them).
using Constraints = std::map<std::string, StateSet>;

StateSet make_state_set(std::vector<StateId> states);
StateSet unite(const StateSet& a, const StateSet& b);
bool is_subset(const StateSet& a, const StateSet& b);

enum class Origin { Original, Derived, Saturated };

struct Provenance {
  Origin origin = Origin::Original;
  /// Index into the saturation justifications when origin == Saturated.
  std::size_t justification = 0;
  bool operator==(const Provenance&) const = default;
};

struct PlainTransition {
  SymbolId symbol = 0;
  std::vector<StateSet> children;
  StateId target = 0;
  Provenance provenance;
};

/// Consumes a whole linear control-rooted pattern at the root in one step.
struct DeepTransition {
  Term pattern;
  Constraints constraints;
  StateId target = 0;
  /// Rule whose left side is `pattern`, for saturated transitions.
  std::string rule;
  Provenance provenance;
};

struct TransitionRef {
  enum class Kind { Plain, Deep } kind = Kind::Plain;
  std::size_t index = 0;
  auto operator<=>(const TransitionRef&) const = default;
};

struct StateInfo {
  std::string name;
  SortId sort = 0;
};

/// Finite tree automaton with conjunctive child constraints and deep pattern transitions.
///
/// acc(t) is the least set with q in acc(f(t1..tk)) when some plain (f, C, q) has every state
/// of C_i in acc(t_i), and q in acc(t) when some deep (pi, theta, q) has t = pi.sigma with
/// every state of theta(x) in acc(sigma(x)). L = conf-sorted terms whose acc meets the finals.
class Afta {
 public:
  explicit Afta(AlphabetPtr alphabet);

  const AlphabetPtr& alphabet() const { return alphabet_; }

  StateId add_state(std::string name, SortId sort);
  /// Picks an unused name derived from `stem`.
  StateId add_fresh_state(const std::string& stem, SortId sort);
  void set_final(StateId state);

  std::size_t add_transition(PlainTransition transition);
  std::size_t add_deep(DeepTransition transition);

  std::size_t state_count() const { return states_.size(); }
  const StateInfo& state(StateId id) const { return states_.at(id); }
  std::optional<StateId> find_state(std::string_view name) const;
  const StateSet& finals() const { return finals_; }
  bool is_final(StateId s) const;

  const std::vector<PlainTransition>& transitions() const { return plain_; }
  const std::vector<DeepTransition>& deep_transitions() const { return deep_; }

  /// Plain transitions with the given head symbol.
  const std::vector<std::size_t>& plain_by_symbol(SymbolId symbol) const;
  /// Plain transitions with the given head symbol and target.
  const std::vector<std::size_t>& plain_into(SymbolId symbol, StateId target) const;
  /// Deep transitions into `target`.
  const std::vector<std::size_t>& deep_into(StateId target) const;

  bool has_deep() const { return !deep_.empty(); }
  /// Singleton constraints only and no deep transitions.
  bool is_nondeterministic_plain() const;

  std::string state_set_string(const StateSet& set) const;

 private:
  void check_state(StateId s) const;

  AlphabetPtr alphabet_;
  std::vector<StateInfo> states_;
  std::unordered_map<std::string, StateId> state_index_;
  StateSet finals_;
  std::vector<PlainTransition> plain_;
  std::vector<DeepTransition> deep_;
  std::vector<std::vector<std::size_t>> by_symbol_;
  std::map<std::pair<SymbolId, StateId>, std::vector<std::size_t>> into_;
  std::map<StateId, std::vector<std::size_t>> deep_into_;
};

/// Standard nondeterministic bottom-up tree automaton: every constraint is a singleton and
/// there are no deep transitions.
class Nfta {
 public:
  explicit Nfta(Afta automaton);
  const Afta& automaton() const { return automaton_; }
  const AlphabetPtr& alphabet() const { return automaton_.alphabet(); }

 private:
  Afta automaton_;
};

/// Memoized acceptance queries on a frozen automaton.
class Acceptor {
 public:
  explicit Acceptor(const Afta& automaton) : automaton_(automaton) {}

  const StateSet& acc(const Term& term);
  bool accepts(const Term& term);
  /// Whether deep transition `index` applies at the root of `term`.
  bool deep_applies(std::size_t index, const Term& term);

 private:
  const Afta& automaton_;
  std::unordered_map<Term, StateSet, TermHash> memo_;
};

StateSet acc_states(const Afta& automaton, const Term& term);
bool accepts(const Afta& automaton, const Term& term);

}  // namespace rootsat
