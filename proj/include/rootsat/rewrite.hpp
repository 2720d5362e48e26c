#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rootsat/term.hpp"

namespace rootsat {

/// label: lhs -> rhs, applied at the root only.
struct RewriteRule {
  std::string label;
  Term lhs;
  Term rhs;

  std::string to_string() const { return label + ": " + lhs.to_string() + " -> " + rhs.to_string(); }
};

enum class ViolationKind {
  NonLinearLhs,
  ControlBelowRoot,
  MissingControlRoot,
  FreshRhsVariable,
  SortError,
  DuplicateLabel,
};

const char* to_string(ViolationKind kind);

struct Violation {
  std::string rule;
  ViolationKind kind;
  std::string detail;
};

/// A rule set that has passed validate_system. Rules are kept sorted by label.
class RootRewriteSystem {
 public:
  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  const RewriteRule* find(std::string_view label) const;
  /// Maximum depth (in edges) over rule left sides.
  std::size_t lhs_depth() const { return lhs_depth_; }

 private:
  friend struct SystemValidation;
  AlphabetPtr alphabet_;
  std::vector<RewriteRule> rules_;
  std::size_t lhs_depth_ = 0;
};

struct SystemValidation {
  std::optional<RootRewriteSystem> system;
  std::vector<Violation> violations;

  bool ok() const { return system.has_value(); }
  static SystemValidation run(AlphabetPtr alphabet, std::vector<RewriteRule> rules);
};

/// Checks every rule against the root-rewriting class: control-rooted sides with no control
/// symbol below the root, linear left side, right-side variables drawn from the left side.
SystemValidation validate_system(AlphabetPtr alphabet, std::vector<RewriteRule> rules);

/// Validates or throws an Error listing every violation.
RootRewriteSystem make_system(AlphabetPtr alphabet, std::vector<RewriteRule> rules);

struct Successor {
  std::string rule;
  Substitution subst;
  Term term;
};

/// All one-step root rewrites of a conf-sorted ground term, in rule-label order.
std::vector<Successor> rewrite_once(const RootRewriteSystem& system, const Term& term);

struct TraceStep {
  std::string rule;
  Substitution subst;
};

using Trace = std::vector<TraceStep>;

/// Terms visited by replaying `trace` from `start`; empty if some step does not apply.
std::optional<std::vector<Term>> replay(const RootRewriteSystem& system, const Trace& trace,
                                        const Term& start);

/// Bounded breadth-first forward search: a shortest trace (ties broken by rule label) from
/// `start` to a term satisfying `in_target`, using at most `step_bound` steps.
std::optional<Trace> oracle_prestar_member(const RootRewriteSystem& system,
                                           const std::function<bool(const Term&)>& in_target,
                                           const Term& start, std::size_t step_bound);

}  // namespace rootsat
