#include "rootsat/encodings/pds.hpp"

#include <algorithm>

#include "rootsat/parse.hpp"

namespace rootsat::enc {

std::string PdsCommand::to_string() const {
  return from + " : replace(" + top + ", \"" + join_word(word) + "\") -> " + to;
}

void PdsSpec::validate() const {
  if (controls.empty()) throw EncodingError("no control states declared");
  for (const auto& p : controls) check_name("control", p, {kBottom});
  for (const auto& a : gamma) check_name("stack symbol", a, {kBottom});
  std::vector<std::string> all = controls;
  all.insert(all.end(), gamma.begin(), gamma.end());
  check_distinct("name", all);
  auto is_control = [&](const std::string& p) {
    return std::find(controls.begin(), controls.end(), p) != controls.end();
  };
  auto is_symbol = [&](const std::string& a) {
    return std::find(gamma.begin(), gamma.end(), a) != gamma.end();
  };
  for (const auto& c : commands) {
    if (!is_control(c.from)) throw EncodingError("unknown control '" + c.from + "'");
    if (!is_control(c.to)) throw EncodingError("unknown control '" + c.to + "'");
    if (c.top != kBottom && !is_symbol(c.top)) throw EncodingError("unknown stack symbol '" + c.top + "'");
    for (const auto& b : c.word)
      if (!is_symbol(b)) throw EncodingError("unknown stack symbol '" + b + "' in pushed word");
  }
}

AlphabetPtr pds_alphabet(const PdsSpec& spec) {
  auto alpha = std::make_shared<RankedAlphabet>();
  alpha->add_symbol(kBottom, {}, "stack", SymbolKind::Stack);
  for (const auto& a : spec.gamma) alpha->add_symbol(a, {"stack"}, "stack", SymbolKind::Stack);
  for (const auto& p : spec.controls) alpha->add_symbol(p, {"stack"}, "conf", SymbolKind::Control);
  return alpha;
}

Term PdsCodec::encode(const PdsConfig& config) const {
  try {
    Term t = Term::app(*alphabet_, kBottom);
    for (auto it = config.stack.rbegin(); it != config.stack.rend(); ++it) {
      if (*it == kBottom) throw EncodingError("bottom symbol inside a stack");
      t = Term::app(*alphabet_, *it, {t});
    }
    auto p = alphabet_->find_symbol(config.control);
    if (!p || alphabet_->symbol(*p).kind != SymbolKind::Control)
      throw EncodingError("unknown control '" + config.control + "'");
    return Term::app(*alphabet_, *p, {t});
  } catch (const SortError& e) {
    throw EncodingError(e.what());
  }
}

PdsConfig PdsCodec::decode(const Term& term) const {
  if (!term.is_ground() || term.is_var() || term.sort() != RankedAlphabet::kConf ||
      term.children().size() != 1)
    throw EncodingError("not an encoded configuration: " + term.to_string());
  PdsConfig c{term.name(), {}};
  Term t = term.children()[0];
  while (t.name() != kBottom) {
    if (t.children().size() != 1) throw EncodingError("malformed stack: " + term.to_string());
    c.stack.push_back(t.name());
    t = t.children()[0];
  }
  return c;
}

PdsEncoding encode_system_pds(const PdsSpec& spec) {
  spec.validate();
  AlphabetPtr alpha = pds_alphabet(spec);
  SortId stack = *alpha->find_sort("stack");
  std::vector<RewriteRule> rules;
  PdsEncoding out{RootRewriteSystem{}, PdsCodec(alpha), {}, {}};
  for (std::size_t i = 0; i < spec.commands.size(); ++i) {
    const PdsCommand& c = spec.commands[i];
    bool bottom = c.top == kBottom;
    Term rest = bottom ? Term::app(*alpha, kBottom) : Term::var("x", stack);
    Term lhs_stack = bottom ? rest : Term::app(*alpha, c.top, {rest});
    Term rhs_stack = rest;
    for (auto it = c.word.rbegin(); it != c.word.rend(); ++it) rhs_stack = Term::app(*alpha, *it, {rhs_stack});
    RewriteRule r{"m" + std::to_string(i), Term::app(*alpha, c.from, {lhs_stack}),
                  Term::app(*alpha, c.to, {rhs_stack})};
    out.command_rules.push_back({r.label});
    out.manifest.entries.push_back({c.to_string(), {r.label}});
    rules.push_back(std::move(r));
  }
  out.system = make_system(alpha, std::move(rules));
  return out;
}

std::optional<PdsConfig> step_direct(const PdsSpec&, const PdsConfig& config, const PdsCommand& command) {
  if (config.control != command.from) return std::nullopt;
  PdsConfig next{command.to, command.word};
  if (command.top == kBottom) {
    if (!config.stack.empty()) return std::nullopt;
    return next;
  }
  if (config.stack.empty() || config.stack.front() != command.top) return std::nullopt;
  next.stack.insert(next.stack.end(), config.stack.begin() + 1, config.stack.end());
  return next;
}

Nfta target_control(const PdsSpec& spec, const std::string& control) {
  spec.validate();
  return control_target(pds_alphabet(spec), control);
}

Nfta target_terms(const PdsSpec& spec, const std::vector<PdsConfig>& configs) {
  spec.validate();
  PdsCodec codec(pds_alphabet(spec));
  std::vector<Term> terms;
  for (const auto& c : configs) terms.push_back(codec.encode(c));
  return terms_target(codec.alphabet(), terms);
}

std::vector<std::string> parse_word_literal(Cursor& cur) {
  std::size_t at = cur.position();
  std::vector<std::string> word = split_word(cur.quoted());
  if (word.empty() || word.back() != ".") throw ParseError("stack literal must end with the bottom '.'", at);
  word.pop_back();
  for (const auto& a : word)
    if (a == ".") throw ParseError("bottom '.' inside a stack literal", at);
  return word;
}

PdsConfig parse_pds_config(std::string_view text) {
  Cursor cur(text);
  PdsConfig c;
  c.control = cur.identifier();
  c.stack = parse_word_literal(cur);
  if (!cur.at_end()) cur.fail("trailing input after stack literal");
  return c;
}

std::string format_word_literal(const std::vector<std::string>& stack) {
  std::string body = join_word(stack);
  bool single = body.size() == stack.size();
  return "\"" + body + (single ? "." : " .") + "\"";
}

std::string format_config(const PdsConfig& config) {
  return config.control + " " + format_word_literal(config.stack);
}

}  // namespace rootsat::enc
