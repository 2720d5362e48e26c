#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rootsat {

using SortId = std::uint32_t;
using SymbolId = std::uint32_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SortError : public Error {
 public:
  using Error::Error;
};

/// Raised when a configurable resource budget trips.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

enum class SymbolKind { Control, Stack };

struct Symbol {
  std::string name;
  std::vector<SortId> args;
  SortId result = 0;
  SymbolKind kind = SymbolKind::Stack;

  std::size_t arity() const { return args.size(); }
  bool operator==(const Symbol&) const = default;
};

/// Many-sorted signature. Sort 0 is always "conf"; control symbols produce it and no symbol
/// consumes it, so a control symbol can only ever appear at the root of a term.
class RankedAlphabet {
 public:
  static constexpr SortId kConf = 0;

  RankedAlphabet();

  SortId add_sort(std::string_view name);
  SymbolId add_symbol(std::string name, const std::vector<std::string>& arg_sorts,
                      std::string_view result_sort, SymbolKind kind);

  std::optional<SortId> find_sort(std::string_view name) const;
  std::optional<SymbolId> find_symbol(std::string_view name) const;

  const Symbol& symbol(SymbolId id) const { return symbols_.at(id); }
  const std::string& sort_name(SortId id) const { return sorts_.at(id); }
  std::size_t symbol_count() const { return symbols_.size(); }
  std::size_t sort_count() const { return sorts_.size(); }

  /// Symbols whose result sort is `sort`, ordered by name.
  std::vector<SymbolId> symbols_of_sort(SortId sort) const;

  bool operator==(const RankedAlphabet& other) const {
    return sorts_ == other.sorts_ && symbols_ == other.symbols_;
  }

 private:
  std::vector<std::string> sorts_;
  std::vector<Symbol> symbols_;
  std::map<std::string, SymbolId, std::less<>> symbol_index_;
};

using AlphabetPtr = std::shared_ptr<const RankedAlphabet>;

}  // namespace rootsat
