#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rootsat/automaton.hpp"
#include "rootsat/rewrite.hpp"

namespace rootsat {

struct SaturationConfig {
  std::size_t transition_budget = 100'000;
  std::size_t derived_budget = 10'000;
  bool acceleration = true;
  /// Unlimited when absent.
  std::optional<std::size_t> max_rounds;
};

enum class SaturationStatus { Fixpoint, BudgetExceeded };

const char* to_string(SaturationStatus status);

struct SaturationStats {
  std::size_t rounds = 0;
  std::size_t transitions_added = 0;
  std::size_t derived_states = 0;
  double milliseconds = 0;
};

/// Certificate for one saturated deep transition: evaluating the rule's right side at
/// `final_state` under `theta` succeeds using exactly the `evidence` transitions.
struct Justification {
  std::string rule;
  StateId final_state = 0;
  Constraints theta;
  std::vector<TransitionRef> evidence;
  /// Index of the deep transition this justification produced.
  std::size_t transition = 0;
  /// Set when the transition came from knot-tying a self-similar chain.
  std::optional<StateId> loop_state;
};

struct SaturationResult {
  /// Recognizes pre* of the input language (at Fixpoint).
  Afta automaton;
  /// The input automaton, unchanged.
  Afta input;
  SaturationStatus status = SaturationStatus::Fixpoint;
  SaturationStats stats;
  std::vector<Justification> justifications;
  std::string budget_message;
};

/// A rhs variable bound to a strict subpattern of a deep transition's pattern; discharged
/// into a derived state.
struct DerivedBinding {
  std::string variable;
  Term spine;
  StateId state = 0;
};

/// One way of accepting a rule right side at a state.
struct RhsEvaluation {
  Constraints theta;
  /// evidence.front() is the transition used at the root.
  std::vector<TransitionRef> evidence;
  std::vector<DerivedBinding> bindings;
};

/// Identity of a derived state: instances of `spine` whose variable subtrees satisfy
/// `constraints`. Loop states additionally close the chain spine[var := spine[var := ...]].
struct DerivedIdentity {
  Term spine;
  Constraints constraints;
  bool loop = false;
  /// For loop states: the self-referential variable and the base state the chain starts at.
  std::string loop_variable;
  StateId loop_base = 0;
};

/// Mutable saturation builder. One instance runs single-threaded.
class Saturator {
 public:
  Saturator(const RootRewriteSystem& system, const Afta& input, SaturationConfig config = {});

  const Afta& automaton() const { return automaton_; }
  const RootRewriteSystem& system() const { return system_; }

  /// All constraint maps over Var(rhs) under which rhs.sigma is accepted at `state`.
  std::vector<RhsEvaluation> eval_rhs(const Term& rhs, StateId state);

  /// Hash-consed state accepting exactly the instances of `spine` meeting `constraints`.
  StateId request_derived_state(const Term& spine, const Constraints& constraints);

  /// Adds the deep transition (rule.lhs, theta, final) unless an existing one for the same
  /// rule and target already subsumes it. Returns whether the automaton changed.
  bool emit(const RewriteRule& rule, StateId final_state, RhsEvaluation evaluation);

  /// One pass over every rule and final state. Returns whether anything was added.
  bool round();

  /// Runs rounds to a fixpoint or until a budget trips.
  SaturationResult run();

  const std::vector<Justification>& justifications() const { return justifications_; }
  std::optional<DerivedIdentity> derived_identity(StateId state) const;

 private:
  using Results = std::vector<RhsEvaluation>;
  struct MemoKey {
    const void* node;
    StateId state;
    auto operator<=>(const MemoKey&) const = default;
  };

  Results eval_node(const Term& rhs, StateId state, bool at_root, std::map<MemoKey, Results>& memo);
  Results walk_deep(const Term& pattern, const Term& rhs, const Constraints& theta,
                    std::map<MemoKey, Results>& memo);
  StateId materialize_loop(const Term& spine, const std::string& variable,
                           const Constraints& constraints, StateId base);
  std::vector<StateSet> spine_children(const Term& spine, const Constraints& constraints);
  void count_transition();
  std::optional<RhsEvaluation> accelerate(const RewriteRule& rule, StateId final_state,
                                          const RhsEvaluation& evaluation);
  std::optional<RhsEvaluation> widen(const DeepTransition& prev, const RhsEvaluation& evaluation);

  const RootRewriteSystem& system_;
  SaturationConfig config_;
  Afta input_;
  Afta automaton_;
  std::vector<Justification> justifications_;
  std::map<std::pair<Term, Constraints>, StateId> derived_;
  std::map<StateId, DerivedIdentity> identities_;
  /// (rule, target, theta) of every emitted deep transition, for the common exact-repeat case.
  std::set<std::tuple<std::string, StateId, Constraints>> emitted_;
  // Evaluations already handled, keyed before widening.
  std::set<std::tuple<std::string, StateId, Constraints>> seen_;
  std::size_t transitions_added_ = 0;
  std::size_t derived_count_ = 0;
  std::size_t rounds_ = 0;
};

SaturationResult saturate(const RootRewriteSystem& system, const Afta& input,
                          const SaturationConfig& config = {});

/// Line-oriented stats report: status, rounds, transitions, derived states, milliseconds.
std::string stats_report(const SaturationResult& result);

class NotAccepted : public Error {
 public:
  using Error::Error;
};

/// Rewrite trace from `term` into L(input), found by following saturated deep transitions
/// that accept the current term. Throws NotAccepted when the saturated automaton rejects
/// `term`; returns nullopt if no certificate is found within `node_limit` explored terms.
std::optional<Trace> witness(const RootRewriteSystem& system, const Afta& saturated,
                             const Afta& input, const Term& term, std::size_t node_limit = 200'000);
std::optional<Trace> witness(const RootRewriteSystem& system, const SaturationResult& result,
                             const Term& term, std::size_t node_limit = 200'000);

/// Replays `trace` from `term` through rewrite_once and checks the endpoint is in L(input).
bool verify_trace(const RootRewriteSystem& system, const Afta& input, const Trace& trace,
                  const Term& term);

}  // namespace rootsat
