#include "rootsat/encodings/ompds.hpp"

#include <algorithm>

#include "rootsat/encodings/pds.hpp"
#include "rootsat/parse.hpp"

namespace rootsat::enc {

std::string OmpdsCommand::to_string() const {
  switch (kind) {
    case Kind::Internal: return from + " : internal -> " + to;
    case Kind::Push: return from + " : push(" + std::to_string(stack) + ", " + symbol + ") -> " + to;
    case Kind::Pop: return from + " : pop(" + std::to_string(stack) + ", " + symbol + ") -> " + to;
  }
  return "";
}

void OmpdsSpec::validate() const {
  if (stacks < 1) throw EncodingError("an ordered multi-pushdown system needs at least one stack");
  if (controls.empty()) throw EncodingError("no control states declared");
  for (const auto& p : controls) check_name("control", p, {kBottom});
  for (const auto& a : gamma) check_name("stack symbol", a, {kBottom});
  std::vector<std::string> all = controls;
  all.insert(all.end(), gamma.begin(), gamma.end());
  check_distinct("name", all);
  auto known = [](const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  for (const auto& c : commands) {
    if (!known(controls, c.from)) throw EncodingError("unknown control '" + c.from + "'");
    if (!known(controls, c.to)) throw EncodingError("unknown control '" + c.to + "'");
    if (c.kind == OmpdsCommand::Kind::Internal) continue;
    if (c.stack < 1 || c.stack > stacks)
      throw EncodingError("stack index " + std::to_string(c.stack) + " out of range 1.." + std::to_string(stacks));
    if (!known(gamma, c.symbol)) throw EncodingError("unknown stack symbol '" + c.symbol + "'");
  }
}

AlphabetPtr ompds_alphabet(const OmpdsSpec& spec) {
  auto alpha = std::make_shared<RankedAlphabet>();
  alpha->add_symbol(kBottom, {}, "stack", SymbolKind::Stack);
  for (const auto& a : spec.gamma) alpha->add_symbol(a, {"stack"}, "stack", SymbolKind::Stack);
  std::vector<std::string> args(spec.stacks, "stack");
  for (const auto& p : spec.controls) alpha->add_symbol(p, args, "conf", SymbolKind::Control);
  return alpha;
}

Term OmpdsCodec::encode(const OmpdsConfig& config) const {
  if (config.stacks.size() != stacks_)
    throw EncodingError("expected " + std::to_string(stacks_) + " stacks, got " +
                        std::to_string(config.stacks.size()));
  try {
    std::vector<Term> kids;
    for (const auto& s : config.stacks) {
      Term t = Term::app(*alphabet_, kBottom);
      for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (*it == kBottom) throw EncodingError("bottom symbol inside a stack");
        t = Term::app(*alphabet_, *it, {t});
      }
      kids.push_back(t);
    }
    auto p = alphabet_->find_symbol(config.control);
    if (!p || alphabet_->symbol(*p).kind != SymbolKind::Control)
      throw EncodingError("unknown control '" + config.control + "'");
    return Term::app(*alphabet_, *p, std::move(kids));
  } catch (const SortError& e) {
    throw EncodingError(e.what());
  }
}

OmpdsConfig OmpdsCodec::decode(const Term& term) const {
  if (!term.is_ground() || term.is_var() || term.sort() != RankedAlphabet::kConf ||
      term.children().size() != stacks_)
    throw EncodingError("not an encoded configuration: " + term.to_string());
  OmpdsConfig c{term.name(), {}};
  for (const auto& kid : term.children()) {
    std::vector<std::string> s;
    Term t = kid;
    while (t.name() != kBottom) {
      if (t.children().size() != 1) throw EncodingError("malformed stack: " + term.to_string());
      s.push_back(t.name());
      t = t.children()[0];
    }
    c.stacks.push_back(std::move(s));
  }
  return c;
}

OmpdsEncoding encode_system_ompds(const OmpdsSpec& spec) {
  spec.validate();
  AlphabetPtr alpha = ompds_alphabet(spec);
  SortId stack = *alpha->find_sort("stack");
  std::vector<Term> xs;
  for (std::size_t i = 1; i <= spec.stacks; ++i) xs.push_back(Term::var("x" + std::to_string(i), stack));
  std::vector<RewriteRule> rules;
  OmpdsEncoding out{RootRewriteSystem{}, OmpdsCodec(alpha, spec.stacks), {}, {}};
  for (std::size_t i = 0; i < spec.commands.size(); ++i) {
    const OmpdsCommand& c = spec.commands[i];
    std::vector<Term> lhs = xs, rhs = xs;
    std::size_t k = c.stack - 1;
    switch (c.kind) {
      case OmpdsCommand::Kind::Internal: break;
      case OmpdsCommand::Kind::Push: rhs[k] = Term::app(*alpha, c.symbol, {xs[k]}); break;
      case OmpdsCommand::Kind::Pop:
        lhs[k] = Term::app(*alpha, c.symbol, {xs[k]});
        for (std::size_t j = 0; j < k; ++j) rhs[j] = Term::app(*alpha, kBottom);
        break;
    }
    RewriteRule r{"m" + std::to_string(i), Term::app(*alpha, c.from, lhs), Term::app(*alpha, c.to, rhs)};
    out.command_rules.push_back({r.label});
    out.manifest.entries.push_back({c.to_string(), {r.label}});
    rules.push_back(std::move(r));
  }
  out.system = make_system(alpha, std::move(rules));
  return out;
}

std::optional<OmpdsConfig> step_direct(const OmpdsSpec&, const OmpdsConfig& config,
                                       const OmpdsCommand& command) {
  if (config.control != command.from) return std::nullopt;
  OmpdsConfig next = config;
  next.control = command.to;
  std::size_t k = command.stack - 1;
  switch (command.kind) {
    case OmpdsCommand::Kind::Internal: break;
    case OmpdsCommand::Kind::Push:
      next.stacks.at(k).insert(next.stacks[k].begin(), command.symbol);
      break;
    case OmpdsCommand::Kind::Pop:
      if (next.stacks.at(k).empty() || next.stacks[k].front() != command.symbol) return std::nullopt;
      next.stacks[k].erase(next.stacks[k].begin());
      for (std::size_t j = 0; j < k; ++j) next.stacks[j].clear();
      break;
  }
  return next;
}

Nfta target_control(const OmpdsSpec& spec, const std::string& control) {
  spec.validate();
  return control_target(ompds_alphabet(spec), control);
}

Nfta target_terms(const OmpdsSpec& spec, const std::vector<OmpdsConfig>& configs) {
  spec.validate();
  OmpdsCodec codec(ompds_alphabet(spec), spec.stacks);
  std::vector<Term> terms;
  for (const auto& c : configs) terms.push_back(codec.encode(c));
  return terms_target(codec.alphabet(), terms);
}

OmpdsConfig parse_ompds_config(std::string_view text) {
  Cursor cur(text);
  OmpdsConfig c;
  c.control = cur.identifier();
  cur.expect('[');
  do c.stacks.push_back(parse_word_literal(cur));
  while (cur.consume(','));
  cur.expect(']');
  if (!cur.at_end()) cur.fail("trailing input");
  return c;
}

std::string format_config(const OmpdsConfig& config) {
  std::string out = config.control + " [";
  for (std::size_t i = 0; i < config.stacks.size(); ++i) {
    if (i) out += ", ";
    out += format_word_literal(config.stacks[i]);
  }
  return out + "]";
}

}  // namespace rootsat::enc
