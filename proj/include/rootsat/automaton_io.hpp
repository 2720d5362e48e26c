#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rootsat/automaton.hpp"
#include "rootsat/rewrite.hpp"

namespace rootsat {

/// Contents of a system or automaton file. Both share one line grammar:
///
///   sym : sort1 * sort2 -> sort [control|stack]     alphabet
///   label: LHS -> RHS                                rule
///   state s : sort                                   automaton state
///   final qf
///   trans f({s1,s2},{s3}) -> q [@derived]
///   deep p(a(?x)) [?x:{s1}] -> qf [@sat(label)]
///
/// Alphabet lines must precede every other kind. `#` starts a comment.
struct Document {
  AlphabetPtr alphabet;
  std::vector<RewriteRule> rules;
  std::optional<Afta> automaton;
};

Document parse_document(std::string_view text);
Document read_document(const std::string& path);

std::string write_alphabet(const RankedAlphabet& alphabet);
std::string write_rules(const std::vector<RewriteRule>& rules);
std::string write_automaton_body(const Afta& automaton);
/// Alphabet, optional rules, then the automaton, in canonical order.
std::string write_document(const Afta& automaton, const std::vector<RewriteRule>& rules = {});
std::string write_system(const RootRewriteSystem& system);

std::string format_transition(const Afta& automaton, const PlainTransition& t);
std::string format_deep(const Afta& automaton, const DeepTransition& t);

/// Graphviz rendering: states as circles (finals doubled), each transition as a box node
/// with edges from its constraint states and an edge to its target.
std::string to_dot(const Afta& automaton);

}  // namespace rootsat
