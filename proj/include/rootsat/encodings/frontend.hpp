#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rootsat/encodings/apds.hpp"
#include "rootsat/encodings/ompds.hpp"
#include "rootsat/encodings/pds.hpp"

namespace rootsat::enc {

enum class Family { Pds, Ompds, Apds };

const char* to_string(Family family);

/// A parsed front-end file: one machine plus optional target declarations.
struct Frontend {
  Family family = Family::Pds;
  std::variant<PdsSpec, OmpdsSpec, ApdsSpec> spec;
  std::vector<std::string> target_controls;
  /// Config literals in the family's syntax.
  std::vector<std::string> target_configs;
};

/// Line-oriented format:
///
///     [apds order=2]
///     controls: p q r
///     gamma: a b
///     p : push(2) -> q
///     target control r
///     target config r [[a]]
Frontend parse_frontend(std::string_view text);
Frontend read_frontend(const std::string& path);

struct CompiledFrontend {
  RootRewriteSystem system;
  Manifest manifest;
  /// Union of the declared targets; absent when none is declared.
  std::optional<Nfta> target;
  /// Encoded target configurations, in declaration order.
  std::vector<Term> target_terms;
};

CompiledFrontend compile_frontend(const Frontend& frontend);

/// Encodes one config literal of the frontend's family.
Term encode_literal(const Frontend& frontend, std::string_view literal);

}  // namespace rootsat::enc
