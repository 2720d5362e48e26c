#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootsat/encodings/common.hpp"
#include "rootsat/parse.hpp"

namespace rootsat::enc {

inline constexpr const char* kBottom = "bot";

/// In `from` with top symbol `top`, go to `to` replacing it by `word` (leftmost on top).
/// `top` may be the bottom symbol, which is never removed: the word is pushed above it.
struct PdsCommand {
  std::string from;
  std::string top;
  std::string to;
  std::vector<std::string> word;

  std::string to_string() const;
};

struct PdsSpec {
  std::vector<std::string> controls;
  /// Stack symbols, excluding the bottom symbol.
  std::vector<std::string> gamma;
  std::vector<PdsCommand> commands;

  void validate() const;
};

/// Stack contents are listed top first; the bottom symbol is implicit.
struct PdsConfig {
  std::string control;
  std::vector<std::string> stack;

  bool operator==(const PdsConfig&) const = default;
};

class PdsCodec {
 public:
  explicit PdsCodec(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
  const AlphabetPtr& alphabet() const { return alphabet_; }
  Term encode(const PdsConfig& config) const;
  PdsConfig decode(const Term& term) const;

 private:
  AlphabetPtr alphabet_;
};

struct PdsEncoding {
  RootRewriteSystem system;
  PdsCodec codec;
  Manifest manifest;
  /// Rule labels per command, parallel to spec.commands.
  std::vector<std::vector<std::string>> command_rules;
};

AlphabetPtr pds_alphabet(const PdsSpec& spec);
PdsEncoding encode_system_pds(const PdsSpec& spec);

std::optional<PdsConfig> step_direct(const PdsSpec& spec, const PdsConfig& config,
                                     const PdsCommand& command);

Nfta target_control(const PdsSpec& spec, const std::string& control);
Nfta target_terms(const PdsSpec& spec, const std::vector<PdsConfig>& configs);

/// `p "ab."`: characters are symbols (or whitespace-separated tokens), '.' is the bottom.
/// A quoted stack word such as "ab." (top first, ending with the bottom '.').
std::vector<std::string> parse_word_literal(Cursor& cur);
std::string format_word_literal(const std::vector<std::string>& stack);

PdsConfig parse_pds_config(std::string_view text);
std::string format_config(const PdsConfig& config);

}  // namespace rootsat::enc
