#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootsat/encodings/common.hpp"
#include "rootsat/parse.hpp"

namespace rootsat::enc {

struct ApdsCell;

/// Annotated stack of a given order, topmost element first. An order-1 stack holds cells;
/// an order-j stack (j >= 2) holds order-(j-1) stacks.
struct ApdsStack {
  std::size_t order = 1;
  std::vector<ApdsStack> stacks;
  std::vector<ApdsCell> cells;

  bool empty() const { return order == 1 ? cells.empty() : stacks.empty(); }
};

/// A stack symbol with the order-k stack it was annotated with at push time.
struct ApdsCell {
  std::string symbol;
  ApdsStack annotation;
};

bool operator==(const ApdsStack& a, const ApdsStack& b);
inline bool operator==(const ApdsCell& a, const ApdsCell& b) {
  return a.symbol == b.symbol && a.annotation == b.annotation;
}

struct ApdsCommand {
  enum class Kind { Rew, Push1, Push, Pop, Collapse } kind = Kind::Rew;
  std::string from;
  std::string to;
  /// Pushed or rewritten symbol (Rew, Push1).
  std::string symbol;
  /// Annotation order k for Push1 and Collapse; stack order j for Push and Pop.
  std::size_t order = 1;

  std::string to_string() const;
};

/// Order-n annotated pushdown system.
struct ApdsSpec {
  std::size_t order = 1;
  std::vector<std::string> controls;
  std::vector<std::string> gamma;
  /// Symbol of the initial stack; the first of gamma when empty.
  std::string initial;
  std::vector<ApdsCommand> commands;

  void validate() const;
  const std::string& initial_symbol() const;
};

struct ApdsConfig {
  std::string control;
  ApdsStack stack;

  bool operator==(const ApdsConfig& o) const { return control == o.control && stack == o.stack; }
};

ApdsStack empty_stack(std::size_t order);
/// Nested singleton stacks down to one cell holding the initial symbol annotated with the
/// empty order-1 stack.
ApdsStack initial_stack(const ApdsSpec& spec);

class ApdsCodec {
 public:
  ApdsCodec(AlphabetPtr alphabet, std::size_t order) : alphabet_(std::move(alphabet)), order_(order) {}
  const AlphabetPtr& alphabet() const { return alphabet_; }
  Term encode(const ApdsConfig& config) const;
  ApdsConfig decode(const Term& term) const;
  Term encode_stack(const ApdsStack& stack) const;
  ApdsStack decode_stack(const Term& term) const;

 private:
  AlphabetPtr alphabet_;
  std::size_t order_;
};

struct ApdsEncoding {
  RootRewriteSystem system;
  ApdsCodec codec;
  Manifest manifest;
  std::vector<std::vector<std::string>> command_rules;
};

AlphabetPtr apds_alphabet(const ApdsSpec& spec);
ApdsEncoding encode_system_apds(const ApdsSpec& spec);

std::optional<ApdsConfig> step_direct(const ApdsSpec& spec, const ApdsConfig& config,
                                      const ApdsCommand& command);

Nfta target_control(const ApdsSpec& spec, const std::string& control);
Nfta target_terms(const ApdsSpec& spec, const std::vector<ApdsConfig>& configs);

/// `p [[a^<2:[[b]]> b] [c]]`: brackets nest by order, leftmost element on top, and
/// `sym^<k:stack>` annotates a symbol with an order-k stack. A bare symbol carries `<1:[]>`.
ApdsConfig parse_apds_config(std::string_view text, std::size_t order);
/// Annotations may have order up to `max_order`, which defaults to `order`.
ApdsStack parse_apds_stack(Cursor& cursor, std::size_t order, std::size_t max_order = 0);
std::string format_stack(const ApdsStack& stack);
std::string format_config(const ApdsConfig& config);

}  // namespace rootsat::enc
