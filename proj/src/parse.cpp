#include "rootsat/parse.hpp"

#include <cctype>
#include <map>

namespace rootsat {

void Cursor::skip_ws() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool Cursor::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

char Cursor::peek() {
  skip_ws();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Cursor::consume(char c) {
  if (peek() != c) return false;
  ++pos_;
  return true;
}

bool Cursor::consume(std::string_view word) {
  skip_ws();
  if (text_.substr(pos_, word.size()) != word) return false;
  pos_ += word.size();
  return true;
}

void Cursor::expect(char c) {
  if (!consume(c)) fail(std::string("expected '") + c + "'");
}

void Cursor::expect(std::string_view word) {
  if (!consume(word)) fail("expected '" + std::string(word) + "'");
}

namespace {
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '$' ||
         c == '+' || c == '.' || c == '-';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
}  // namespace

std::string Cursor::name() {
  skip_ws();
  std::size_t start = pos_;
  // A trailing '-' would swallow the '-' of "->".
  while (pos_ < text_.size() && name_char(text_[pos_]) &&
         !(text_[pos_] == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>'))
    ++pos_;
  if (start == pos_) fail("expected a name");
  return std::string(text_.substr(start, pos_ - start));
}

std::string Cursor::identifier() {
  skip_ws();
  std::size_t start = pos_;
  if (pos_ < text_.size() &&
      (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
    ++pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
  }
  if (start == pos_) fail("expected an identifier");
  return std::string(text_.substr(start, pos_ - start));
}

std::size_t Cursor::integer() {
  skip_ws();
  std::size_t start = pos_;
  std::size_t value = 0;
  while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
    value = value * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
  if (start == pos_) fail("expected an integer");
  return value;
}

std::string Cursor::quoted() {
  expect('"');
  std::size_t start = pos_;
  while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
  if (pos_ >= text_.size()) fail("unterminated string");
  return std::string(text_.substr(start, pos_++ - start));
}

std::string_view Cursor::rest() {
  skip_ws();
  return text_.substr(pos_);
}

void Cursor::fail(const std::string& message) const { throw ParseError(message, position()); }

namespace {

Term parse_node(Cursor& cur, const RankedAlphabet& alphabet, std::optional<SortId> expected,
                std::map<std::string, SortId>& var_sorts) {
  std::size_t at = cur.position();
  if (cur.consume('?')) {
    std::string v = cur.identifier();
    if (!expected) throw ParseError("cannot infer the sort of variable ?" + v, at);
    auto [it, fresh] = var_sorts.emplace(v, *expected);
    if (!fresh && it->second != *expected)
      throw ParseError("variable ?" + v + " used at sorts " + alphabet.sort_name(it->second) +
                           " and " + alphabet.sort_name(*expected),
                       at);
    return Term::var(v, *expected);
  }
  std::string name = cur.identifier();
  auto id = alphabet.find_symbol(name);
  if (!id) throw ParseError("unknown symbol '" + name + "'", at);
  const Symbol& sym = alphabet.symbol(*id);
  if (expected && sym.result != *expected)
    throw ParseError("sort mismatch: '" + name + "' has sort " + alphabet.sort_name(sym.result) +
                         ", expected " + alphabet.sort_name(*expected),
                     at);
  cur.expect('(');
  std::vector<Term> kids;
  if (!cur.consume(')')) {
    do {
      if (kids.size() >= sym.arity())
        throw ParseError("arity mismatch: '" + name + "' takes " + std::to_string(sym.arity()) +
                             " arguments",
                         cur.position());
      kids.push_back(parse_node(cur, alphabet, sym.args[kids.size()], var_sorts));
    } while (cur.consume(','));
    cur.expect(')');
  }
  if (kids.size() != sym.arity())
    throw ParseError("arity mismatch: '" + name + "' takes " + std::to_string(sym.arity()) +
                         " arguments, got " + std::to_string(kids.size()),
                     at);
  return Term::app(alphabet, *id, std::move(kids));
}

}  // namespace

Term parse_term(Cursor& cursor, const RankedAlphabet& alphabet, std::optional<SortId> expected_sort) {
  std::map<std::string, SortId> var_sorts;
  return parse_node(cursor, alphabet, expected_sort, var_sorts);
}

Term parse_term(std::string_view text, const RankedAlphabet& alphabet,
                std::optional<SortId> expected_sort) {
  Cursor cur(text);
  Term t = parse_term(cur, alphabet, expected_sort);
  if (!cur.at_end()) cur.fail("trailing input");
  return t;
}

Term parse_ground_term(std::string_view text, const RankedAlphabet& alphabet) {
  Term t = parse_term(text, alphabet);
  if (!t.is_ground()) throw ParseError("expected a ground term", 0);
  return t;
}

void parse_alphabet_line(std::string_view line, RankedAlphabet& alphabet) {
  Cursor cur(line);
  std::string sym = cur.identifier();
  cur.expect(':');
  std::vector<std::string> args;
  if (!cur.consume("->")) {
    do args.push_back(cur.identifier());
    while (cur.consume('*'));
    cur.expect("->");
  }
  std::string result = cur.identifier();
  SymbolKind kind = result == "conf" ? SymbolKind::Control : SymbolKind::Stack;
  if (cur.consume('[')) {
    std::string k = cur.identifier();
    if (k == "control") kind = SymbolKind::Control;
    else if (k == "stack") kind = SymbolKind::Stack;
    else cur.fail("expected 'control' or 'stack'");
    cur.expect(']');
  }
  if (!cur.at_end()) cur.fail("trailing input");
  try {
    alphabet.add_symbol(sym, args, result, kind);
  } catch (const SortError& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string format_alphabet_line(const RankedAlphabet& alphabet, SymbolId symbol) {
  const Symbol& s = alphabet.symbol(symbol);
  std::string out = s.name + " :";
  for (std::size_t i = 0; i < s.args.size(); ++i) out += (i ? " * " : " ") + alphabet.sort_name(s.args[i]);
  out += " -> " + alphabet.sort_name(s.result);
  out += s.kind == SymbolKind::Control ? " [control]" : " [stack]";
  return out;
}

RewriteRule parse_rule_line(std::string_view line, const RankedAlphabet& alphabet) {
  Cursor cur(line);
  RewriteRule rule;
  rule.label = cur.identifier();
  cur.expect(':');
  // Left and right sides are parsed with separate variable tables; sort agreement across the
  // arrow is a validation concern.
  rule.lhs = parse_term(cur, alphabet, RankedAlphabet::kConf);
  cur.expect("->");
  rule.rhs = parse_term(cur, alphabet, RankedAlphabet::kConf);
  if (!cur.at_end()) cur.fail("trailing input");
  return rule;
}

}  // namespace rootsat
