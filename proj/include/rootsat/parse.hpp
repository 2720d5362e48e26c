#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rootsat/rewrite.hpp"

namespace rootsat {

/// Syntax or well-formedness error at a byte offset of the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at offset " + std::to_string(position)), message_(message), position_(position) {}
  std::size_t position() const { return position_; }
  /// The message without the offset suffix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

/// Character cursor shared by the line-oriented readers.
class Cursor {
 public:
  explicit Cursor(std::string_view text, std::size_t base = 0) : text_(text), base_(base) {}

  void skip_ws();
  bool at_end();
  char peek();
  bool consume(char c);
  bool consume(std::string_view word);
  void expect(char c);
  void expect(std::string_view word);
  /// [A-Za-z0-9_'$+.-]+ ; symbol and variable names use the narrower [A-Za-z_][A-Za-z0-9_']*.
  std::string name();
  std::string identifier();
  std::size_t integer();
  /// Body of a double-quoted string without escapes.
  std::string quoted();
  std::string_view rest();
  std::size_t position() const { return base_ + pos_; }
  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

/// Parses `sym(arg,...)` with `?name` variables. A bare top-level variable needs
/// `expected_sort`; otherwise variable sorts come from their argument position.
Term parse_term(std::string_view text, const RankedAlphabet& alphabet,
                std::optional<SortId> expected_sort = std::nullopt);
Term parse_term(Cursor& cursor, const RankedAlphabet& alphabet,
                std::optional<SortId> expected_sort = std::nullopt);

/// Parses a ground term; variables are rejected.
Term parse_ground_term(std::string_view text, const RankedAlphabet& alphabet);

/// `sym : sort1 * sort2 -> sort3 [control|stack]`, or `sym : -> sort` for constants.
void parse_alphabet_line(std::string_view line, RankedAlphabet& alphabet);

std::string format_alphabet_line(const RankedAlphabet& alphabet, SymbolId symbol);

/// `label: LHS -> RHS`
RewriteRule parse_rule_line(std::string_view line, const RankedAlphabet& alphabet);

}  // namespace rootsat
