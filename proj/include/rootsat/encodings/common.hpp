#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rootsat/automaton.hpp"
#include "rootsat/rewrite.hpp"

namespace rootsat::enc {

/// Invalid front-end specification, malformed direct configuration, or a term outside a
/// codec's image.
class EncodingError : public Error {
 public:
  using Error::Error;
};

/// Which rule labels each front-end command was compiled to, in command order.
struct Manifest {
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;

  std::string to_string() const;
};

/// Throws unless `name` is an identifier not in `reserved`.
void check_name(std::string_view what, const std::string& name,
                const std::vector<std::string>& reserved = {});

/// Throws when `names` repeats an entry.
void check_distinct(std::string_view what, const std::vector<std::string>& names);

/// Every well-sorted configuration whose root is `control`.
Nfta control_target(AlphabetPtr alphabet, const std::string& control);

/// Exactly the given ground configurations.
Nfta terms_target(AlphabetPtr alphabet, const std::vector<Term>& configs);

/// Splits a quoted word literal body: whitespace-separated tokens if it contains whitespace,
/// single characters otherwise.
std::vector<std::string> split_word(std::string_view body);
/// Inverse of split_word for words over the given symbols.
std::string join_word(const std::vector<std::string>& symbols);

}  // namespace rootsat::enc
