#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rootsat/alphabet.hpp"

namespace rootsat {

/// Immutable first-order tree, possibly with variable leaves. Nodes are shared, so copies are
/// cheap. A ground Term is a configuration or subterm; a non-ground one is a pattern.
class Term {
 public:
  Term() = default;

  /// Builds f(children...), checking arity and child sorts against the alphabet.
  static Term app(const RankedAlphabet& alphabet, SymbolId symbol, std::vector<Term> children);
  static Term app(const RankedAlphabet& alphabet, std::string_view symbol,
                  std::vector<Term> children = {});
  static Term var(std::string name, SortId sort);
  /// Same head symbol as `original`, new children of identical sorts.
  static Term with_children(const Term& original, std::vector<Term> children);

  bool valid() const { return node_ != nullptr; }
  bool is_var() const;
  SymbolId symbol() const;
  const std::string& name() const;  // symbol name or variable name
  SortId sort() const;
  const std::vector<Term>& children() const;

  bool is_ground() const;
  /// Nodes on the longest root-to-leaf path; a constant has height 1.
  std::size_t height() const;
  /// Edges on the longest root-to-leaf path; a constant has depth 0.
  std::size_t depth() const { return height() - 1; }
  std::size_t size() const;
  std::size_t hash() const;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  /// Canonical order: variables before applications, then symbol name, then children
  /// left to right.
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Height-major canonical order, used for enumerations.
bool height_less(const Term& a, const Term& b);

using Substitution = std::map<std::string, Term>;

std::string to_string(const Substitution& subst);

/// Variables of a pattern with their sorts.
std::map<std::string, SortId> variables(const Term& pattern);
/// Variable occurrences in left-to-right order (with repetitions).
std::vector<std::string> variable_occurrences(const Term& pattern);
bool is_linear(const Term& pattern);

Term substitute(const Term& pattern, const Substitution& subst);

/// Root matching of a linear pattern against a ground term.
std::optional<Substitution> match_root(const Term& pattern, const Term& term);

/// Most general unifier of two patterns. Variables of `right` that also occur in `left` are
/// renamed apart by appending primes; the returned unifier refers to the renamed names.
std::optional<Substitution> unify(const Term& left, const Term& right);

/// Renames every variable of `pattern` with `rename`.
Term rename_variables(const Term& pattern,
                      const std::function<std::string(const std::string&)>& rename);

/// All ground terms of `sort` with depth at most `max_depth`, in height-major canonical order.
std::vector<Term> enumerate_terms(const RankedAlphabet& alphabet, SortId sort,
                                  std::size_t max_depth);

}  // namespace rootsat
