#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootsat/encodings/common.hpp"

namespace rootsat::enc {

struct OmpdsCommand {
  enum class Kind { Internal, Push, Pop } kind = Kind::Internal;
  std::string from;
  std::string to;
  /// 1-based stack index; unused for Internal.
  std::size_t stack = 0;
  std::string symbol;

  std::string to_string() const;
};

/// Ordered multi-pushdown system. A pop on stack i empties stacks 1..i-1.
struct OmpdsSpec {
  std::size_t stacks = 1;
  std::vector<std::string> controls;
  /// Shared by all stacks, excluding the bottom symbol.
  std::vector<std::string> gamma;
  std::vector<OmpdsCommand> commands;

  void validate() const;
};

/// stacks[i] lists stack i+1 top first; the bottom symbol is implicit.
struct OmpdsConfig {
  std::string control;
  std::vector<std::vector<std::string>> stacks;

  bool operator==(const OmpdsConfig&) const = default;
};

class OmpdsCodec {
 public:
  OmpdsCodec(AlphabetPtr alphabet, std::size_t stacks) : alphabet_(std::move(alphabet)), stacks_(stacks) {}
  const AlphabetPtr& alphabet() const { return alphabet_; }
  Term encode(const OmpdsConfig& config) const;
  OmpdsConfig decode(const Term& term) const;

 private:
  AlphabetPtr alphabet_;
  std::size_t stacks_;
};

struct OmpdsEncoding {
  RootRewriteSystem system;
  OmpdsCodec codec;
  Manifest manifest;
  std::vector<std::vector<std::string>> command_rules;
};

AlphabetPtr ompds_alphabet(const OmpdsSpec& spec);
OmpdsEncoding encode_system_ompds(const OmpdsSpec& spec);

std::optional<OmpdsConfig> step_direct(const OmpdsSpec& spec, const OmpdsConfig& config,
                                       const OmpdsCommand& command);

Nfta target_control(const OmpdsSpec& spec, const std::string& control);
Nfta target_terms(const OmpdsSpec& spec, const std::vector<OmpdsConfig>& configs);

/// `p ["ab.", "b."]`
OmpdsConfig parse_ompds_config(std::string_view text);
std::string format_config(const OmpdsConfig& config);

}  // namespace rootsat::enc
