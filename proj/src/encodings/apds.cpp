#include "rootsat/encodings/apds.hpp"

#include <algorithm>
#include <cctype>

namespace rootsat::enc {

bool operator==(const ApdsStack& a, const ApdsStack& b) {
  return a.order == b.order && a.stacks == b.stacks && a.cells == b.cells;
}

namespace {

std::string stack_sort(std::size_t order) { return "stack" + std::to_string(order); }
std::string n(std::size_t k) { return std::to_string(k); }

bool reserved(const std::string& name) {
  for (std::string prefix : {"e_", "c_", "ann_"}) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) continue;
    if (std::all_of(name.begin() + prefix.size(), name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return true;
  }
  return false;
}

bool known(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

/// Top stack of the given order, or nullptr when some enclosing stack is empty.
ApdsStack* top_stack(ApdsStack& s, std::size_t order) {
  ApdsStack* cur = &s;
  while (cur->order > order) {
    if (cur->stacks.empty()) return nullptr;
    cur = &cur->stacks.front();
  }
  return cur;
}

void check_stack(const ApdsStack& s, std::size_t max_order) {
  if (s.order < 1 || s.order > max_order)
    throw EncodingError("stack order " + n(s.order) + " out of range 1.." + n(max_order));
  if (s.order == 1) {
    if (!s.stacks.empty()) throw EncodingError("order-1 stack with nested stacks");
    for (const auto& c : s.cells) check_stack(c.annotation, max_order);
  } else {
    if (!s.cells.empty()) throw EncodingError("order-" + n(s.order) + " stack with cells");
    for (const auto& c : s.stacks) {
      if (c.order != s.order - 1) throw EncodingError("order-" + n(s.order) + " stack holds an order-" + n(c.order) + " stack");
      check_stack(c, max_order);
    }
  }
}

}  // namespace

std::string ApdsCommand::to_string() const {
  std::string op;
  switch (kind) {
    case Kind::Rew: op = "rew(" + symbol + ")"; break;
    case Kind::Push1: op = "push1(" + symbol + ", " + n(order) + ")"; break;
    case Kind::Push: op = "push(" + n(order) + ")"; break;
    case Kind::Pop: op = "pop(" + n(order) + ")"; break;
    case Kind::Collapse: op = "collapse(" + n(order) + ")"; break;
  }
  return from + " : " + op + " -> " + to;
}

void ApdsSpec::validate() const {
  if (order < 1) throw EncodingError("annotated pushdown order must be at least 1");
  if (controls.empty()) throw EncodingError("no control states declared");
  if (gamma.empty()) throw EncodingError("no stack symbols declared");
  for (const auto& p : controls) {
    check_name("control", p);
    if (reserved(p)) throw EncodingError("control '" + p + "' uses a reserved name");
  }
  for (const auto& a : gamma) {
    check_name("stack symbol", a);
    if (reserved(a)) throw EncodingError("stack symbol '" + a + "' uses a reserved name");
  }
  std::vector<std::string> all = controls;
  all.insert(all.end(), gamma.begin(), gamma.end());
  check_distinct("name", all);
  if (!initial.empty() && !known(gamma, initial))
    throw EncodingError("unknown initial symbol '" + initial + "'");
  for (const auto& c : commands) {
    if (!known(controls, c.from)) throw EncodingError("unknown control '" + c.from + "'");
    if (!known(controls, c.to)) throw EncodingError("unknown control '" + c.to + "'");
    using K = ApdsCommand::Kind;
    if ((c.kind == K::Rew || c.kind == K::Push1) && !known(gamma, c.symbol))
      throw EncodingError("unknown stack symbol '" + c.symbol + "'");
    std::size_t lo = c.kind == K::Push ? 2 : 1;
    if (c.kind != K::Rew && (c.order < lo || c.order > order))
      throw EncodingError("order " + n(c.order) + " out of range " + n(lo) + ".." + n(order) + " in '" +
                          c.to_string() + "'");
  }
}

const std::string& ApdsSpec::initial_symbol() const {
  if (!initial.empty()) return initial;
  if (gamma.empty()) throw EncodingError("no stack symbols declared");
  return gamma.front();
}

ApdsStack empty_stack(std::size_t order) {
  ApdsStack s;
  s.order = order;
  return s;
}

ApdsStack initial_stack(const ApdsSpec& spec) {
  ApdsStack s = empty_stack(1);
  s.cells.push_back({spec.initial_symbol(), empty_stack(1)});
  for (std::size_t j = 2; j <= spec.order; ++j) {
    ApdsStack up = empty_stack(j);
    up.stacks.push_back(std::move(s));
    s = std::move(up);
  }
  return s;
}

AlphabetPtr apds_alphabet(const ApdsSpec& spec) {
  auto alpha = std::make_shared<RankedAlphabet>();
  for (std::size_t j = 1; j <= spec.order; ++j) alpha->add_sort(stack_sort(j));
  alpha->add_sort("ann");
  for (std::size_t j = 1; j <= spec.order; ++j) alpha->add_symbol("e_" + n(j), {}, stack_sort(j), SymbolKind::Stack);
  for (std::size_t j = 2; j <= spec.order; ++j)
    alpha->add_symbol("c_" + n(j), {stack_sort(j - 1), stack_sort(j)}, stack_sort(j), SymbolKind::Stack);
  for (std::size_t k = 1; k <= spec.order; ++k)
    alpha->add_symbol("ann_" + n(k), {stack_sort(k)}, "ann", SymbolKind::Stack);
  for (const auto& a : spec.gamma) alpha->add_symbol(a, {"ann", stack_sort(1)}, stack_sort(1), SymbolKind::Stack);
  for (const auto& p : spec.controls)
    alpha->add_symbol(p, {stack_sort(spec.order)}, "conf", SymbolKind::Control);
  return alpha;
}

Term ApdsCodec::encode_stack(const ApdsStack& stack) const {
  check_stack(stack, order_);
  try {
    const RankedAlphabet& A = *alphabet_;
    Term t = Term::app(A, "e_" + n(stack.order));
    if (stack.order == 1) {
      for (auto it = stack.cells.rbegin(); it != stack.cells.rend(); ++it) {
        auto sym = A.find_symbol(it->symbol);
        if (!sym || A.symbol(*sym).args.size() != 2 || A.sort_name(A.symbol(*sym).result) != "stack1")
          throw EncodingError("unknown stack symbol '" + it->symbol + "'");
        Term ann = Term::app(A, "ann_" + n(it->annotation.order), {encode_stack(it->annotation)});
        t = Term::app(A, *sym, {ann, t});
      }
    } else {
      for (auto it = stack.stacks.rbegin(); it != stack.stacks.rend(); ++it)
        t = Term::app(A, "c_" + n(stack.order), {encode_stack(*it), t});
    }
    return t;
  } catch (const SortError& e) {
    throw EncodingError(e.what());
  }
}

ApdsStack ApdsCodec::decode_stack(const Term& term) const {
  if (term.is_var() || !term.is_ground()) throw EncodingError("not a ground stack: " + term.to_string());
  const std::string& sort = alphabet_->sort_name(term.sort());
  if (sort.rfind("stack", 0) != 0) throw EncodingError("not a stack term: " + term.to_string());
  ApdsStack s = empty_stack(std::stoul(sort.substr(5)));
  std::string empty = "e_" + n(s.order);
  Term t = term;
  while (t.name() != empty) {
    if (s.order == 1) {
      const Term& ann = t.children().at(0);
      s.cells.push_back({t.name(), decode_stack(ann.children().at(0))});
    } else {
      s.stacks.push_back(decode_stack(t.children().at(0)));
    }
    t = t.children().at(1);
  }
  return s;
}

Term ApdsCodec::encode(const ApdsConfig& config) const {
  if (config.stack.order != order_)
    throw EncodingError("configuration stack has order " + n(config.stack.order) + ", expected " + n(order_));
  auto p = alphabet_->find_symbol(config.control);
  if (!p || alphabet_->symbol(*p).kind != SymbolKind::Control)
    throw EncodingError("unknown control '" + config.control + "'");
  return Term::app(*alphabet_, *p, {encode_stack(config.stack)});
}

ApdsConfig ApdsCodec::decode(const Term& term) const {
  if (!term.is_ground() || term.is_var() || term.sort() != RankedAlphabet::kConf ||
      term.children().size() != 1)
    throw EncodingError("not an encoded configuration: " + term.to_string());
  return ApdsConfig{term.name(), decode_stack(term.children()[0])};
}

ApdsEncoding encode_system_apds(const ApdsSpec& spec) {
  spec.validate();
  AlphabetPtr alpha = apds_alphabet(spec);
  const RankedAlphabet& A = *alpha;
  const std::size_t order = spec.order;
  auto var = [&](const std::string& name, const std::string& sort) { return Term::var(name, *A.find_sort(sort)); };
  auto x = [&](std::size_t j) { return var("x" + n(j), stack_sort(j)); };
  // c_n(... c_{m+1}(hole, ?x_{m+1}) ..., ?x_n) around an order-m hole.
  auto wrap = [&](Term hole, std::size_t m) {
    for (std::size_t j = m + 1; j <= order; ++j) hole = Term::app(A, "c_" + n(j), {hole, x(j)});
    return hole;
  };
  auto ann = [&](std::size_t k, Term t) { return Term::app(A, "ann_" + n(k), {std::move(t)}); };

  std::vector<RewriteRule> rules;
  ApdsEncoding out{RootRewriteSystem{}, ApdsCodec(alpha, order), {}, {}};
  for (std::size_t i = 0; i < spec.commands.size(); ++i) {
    const ApdsCommand& c = spec.commands[i];
    const std::string label = "m" + n(i);
    std::vector<RewriteRule> made;
    auto add = [&](std::string l, Term lhs, Term rhs) {
      made.push_back({std::move(l), Term::app(A, c.from, {std::move(lhs)}), Term::app(A, c.to, {std::move(rhs)})});
    };
    using K = ApdsCommand::Kind;
    const std::size_t k = c.order;
    bool per_symbol = c.kind == K::Rew || c.kind == K::Collapse || (c.kind == K::Pop && k == 1) ||
                      (c.kind == K::Push1 && k == 1);
    if (per_symbol) {
      for (const auto& a : spec.gamma) {
        Term z = var("z", c.kind == K::Collapse ? stack_sort(k) : "ann");
        Term top_ann = c.kind == K::Collapse ? ann(k, z) : z;
        Term lhs = wrap(Term::app(A, a, {top_ann, x(1)}), 1);
        Term rhs;
        switch (c.kind) {
          case K::Rew: rhs = wrap(Term::app(A, c.symbol, {z, x(1)}), 1); break;
          case K::Pop: rhs = wrap(x(1), 1); break;
          case K::Push1:
            rhs = wrap(Term::app(A, c.symbol, {ann(1, x(1)), Term::app(A, a, {z, x(1)})}), 1);
            break;
          case K::Collapse: rhs = wrap(z, k); break;
          default: break;
        }
        add(label + "_" + a, lhs, rhs);
      }
    } else if (c.kind == K::Push1) {
      Term y = var("y", stack_sort(1));
      add(label, wrap(y, 1), wrap(Term::app(A, c.symbol, {ann(k, x(k)), y}), 1));
    } else {
      Term y = var("y", stack_sort(k - 1));
      Term cj = Term::app(A, "c_" + n(k), {y, x(k)});
      if (c.kind == K::Push)
        add(label, wrap(cj, k), wrap(Term::app(A, "c_" + n(k), {y, cj}), k));
      else
        add(label, wrap(cj, k), wrap(x(k), k));
    }
    std::vector<std::string> labels;
    for (auto& r : made) {
      labels.push_back(r.label);
      rules.push_back(std::move(r));
    }
    out.command_rules.push_back(labels);
    out.manifest.entries.push_back({c.to_string(), labels});
  }
  out.system = make_system(alpha, std::move(rules));
  return out;
}

std::optional<ApdsConfig> step_direct(const ApdsSpec& spec, const ApdsConfig& config,
                                      const ApdsCommand& command) {
  if (config.control != command.from || config.stack.order != spec.order) return std::nullopt;
  ApdsConfig next = config;
  next.control = command.to;
  ApdsStack* top1 = top_stack(next.stack, 1);
  const std::size_t k = command.order;
  using K = ApdsCommand::Kind;
  switch (command.kind) {
    case K::Rew:
      if (!top1 || top1->cells.empty()) return std::nullopt;
      top1->cells.front().symbol = command.symbol;
      return next;
    case K::Push1: {
      if (!top1) return std::nullopt;
      ApdsStack annotation;
      if (k == 1) {
        if (top1->cells.empty()) return std::nullopt;
        annotation = *top1;
        annotation.cells.erase(annotation.cells.begin());
      } else {
        annotation = *top_stack(next.stack, k);
        annotation.stacks.erase(annotation.stacks.begin());
      }
      top1 = top_stack(next.stack, 1);
      top1->cells.insert(top1->cells.begin(), ApdsCell{command.symbol, std::move(annotation)});
      return next;
    }
    case K::Push: {
      ApdsStack* top = top_stack(next.stack, k);
      if (!top || top->stacks.empty()) return std::nullopt;
      ApdsStack copy = top->stacks.front();
      top->stacks.insert(top->stacks.begin(), std::move(copy));
      return next;
    }
    case K::Pop: {
      ApdsStack* top = top_stack(next.stack, k);
      if (!top || top->empty()) return std::nullopt;
      if (k == 1) top->cells.erase(top->cells.begin());
      else top->stacks.erase(top->stacks.begin());
      return next;
    }
    case K::Collapse: {
      if (!top1 || top1->cells.empty() || top1->cells.front().annotation.order != k) return std::nullopt;
      ApdsStack annotation = top1->cells.front().annotation;
      *top_stack(next.stack, k) = std::move(annotation);
      return next;
    }
  }
  return std::nullopt;
}

Nfta target_control(const ApdsSpec& spec, const std::string& control) {
  spec.validate();
  return control_target(apds_alphabet(spec), control);
}

Nfta target_terms(const ApdsSpec& spec, const std::vector<ApdsConfig>& configs) {
  spec.validate();
  ApdsCodec codec(apds_alphabet(spec), spec.order);
  std::vector<Term> terms;
  for (const auto& c : configs) terms.push_back(codec.encode(c));
  return terms_target(codec.alphabet(), terms);
}

ApdsStack parse_apds_stack(Cursor& cur, std::size_t order, std::size_t max_order) {
  if (order < 1) cur.fail("stack order must be at least 1");
  if (max_order == 0) max_order = order;
  ApdsStack s = empty_stack(order);
  cur.expect('[');
  while (!cur.consume(']')) {
    if (cur.at_end()) cur.fail("unterminated stack literal");
    if (order > 1) {
      s.stacks.push_back(parse_apds_stack(cur, order - 1, max_order));
      continue;
    }
    ApdsCell cell{cur.identifier(), empty_stack(1)};
    if (cur.consume('^')) {
      cur.expect('<');
      std::size_t k = cur.integer();
      if (k < 1 || k > max_order) cur.fail("annotation order must be between 1 and " + std::to_string(max_order));
      cur.expect(':');
      cell.annotation = parse_apds_stack(cur, k, max_order);
      cur.expect('>');
    }
    s.cells.push_back(std::move(cell));
  }
  return s;
}

ApdsConfig parse_apds_config(std::string_view text, std::size_t order) {
  Cursor cur(text);
  ApdsConfig c;
  c.control = cur.identifier();
  c.stack = parse_apds_stack(cur, order);
  if (!cur.at_end()) cur.fail("trailing input");
  return c;
}

std::string format_stack(const ApdsStack& stack) {
  std::string out = "[";
  if (stack.order == 1) {
    for (std::size_t i = 0; i < stack.cells.size(); ++i) {
      if (i) out += ' ';
      const ApdsCell& c = stack.cells[i];
      out += c.symbol;
      if (!(c.annotation == empty_stack(1)))
        out += "^<" + n(c.annotation.order) + ":" + format_stack(c.annotation) + ">";
    }
  } else {
    for (std::size_t i = 0; i < stack.stacks.size(); ++i) {
      if (i) out += ' ';
      out += format_stack(stack.stacks[i]);
    }
  }
  return out + "]";
}

std::string format_config(const ApdsConfig& config) { return config.control + " " + format_stack(config.stack); }

}  // namespace rootsat::enc
