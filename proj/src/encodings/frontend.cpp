#include "rootsat/encodings/frontend.hpp"

#include <fstream>
#include <sstream>

#include "rootsat/automaton_ops.hpp"

namespace rootsat::enc {

const char* to_string(Family family) {
  switch (family) {
    case Family::Pds: return "pds";
    case Family::Ompds: return "ompds";
    case Family::Apds: return "apds";
  }
  return "";
}

namespace {

std::vector<std::string> names(Cursor& cur) {
  std::vector<std::string> out;
  while (!cur.at_end()) out.push_back(cur.identifier());
  return out;
}

Frontend parse_header(Cursor& cur) {
  Frontend f;
  cur.expect('[');
  std::string family = cur.identifier();
  if (family == "pds") {
    f.family = Family::Pds;
    f.spec = PdsSpec{};
  } else if (family == "ompds") {
    f.family = Family::Ompds;
    OmpdsSpec s;
    cur.expect("n");
    cur.expect('=');
    s.stacks = cur.integer();
    if (s.stacks < 1) cur.fail("stack count must be at least 1");
    f.spec = s;
  } else if (family == "apds") {
    f.family = Family::Apds;
    ApdsSpec s;
    cur.expect("order");
    cur.expect('=');
    s.order = cur.integer();
    if (s.order < 1) cur.fail("order must be at least 1");
    f.spec = s;
  } else {
    cur.fail("unknown family '" + family + "'");
  }
  cur.expect(']');
  if (!cur.at_end()) cur.fail("trailing input");
  return f;
}

void parse_pds_command(Cursor& cur, const std::string& from, PdsSpec& spec) {
  PdsCommand c;
  c.from = from;
  std::string op = cur.identifier();
  cur.expect('(');
  c.top = cur.identifier();
  if (op == "replace") {
    cur.expect(',');
    c.word = split_word(cur.quoted());
  } else if (op != "pop") {
    cur.fail("unknown command '" + op + "'");
  }
  cur.expect(')');
  cur.expect("->");
  c.to = cur.identifier();
  spec.commands.push_back(std::move(c));
}

void parse_ompds_command(Cursor& cur, const std::string& from, OmpdsSpec& spec) {
  OmpdsCommand c;
  c.from = from;
  std::string op = cur.identifier();
  if (op == "internal") {
    c.kind = OmpdsCommand::Kind::Internal;
  } else if (op == "push" || op == "pop") {
    c.kind = op == "push" ? OmpdsCommand::Kind::Push : OmpdsCommand::Kind::Pop;
    cur.expect('(');
    c.stack = cur.integer();
    cur.expect(',');
    c.symbol = cur.identifier();
    cur.expect(')');
  } else {
    cur.fail("unknown command '" + op + "'");
  }
  cur.expect("->");
  c.to = cur.identifier();
  spec.commands.push_back(std::move(c));
}

void parse_apds_command(Cursor& cur, const std::string& from, ApdsSpec& spec) {
  ApdsCommand c;
  c.from = from;
  std::string op = cur.identifier();
  using K = ApdsCommand::Kind;
  cur.expect('(');
  if (op == "rew") {
    c.kind = K::Rew;
    c.symbol = cur.identifier();
  } else if (op == "push1") {
    c.kind = K::Push1;
    c.symbol = cur.identifier();
    cur.expect(',');
    c.order = cur.integer();
  } else if (op == "push" || op == "pushj") {
    c.kind = K::Push;
    c.order = cur.integer();
  } else if (op == "pop" || op == "popj") {
    c.kind = K::Pop;
    c.order = cur.integer();
  } else if (op == "collapse") {
    c.kind = K::Collapse;
    c.order = cur.integer();
  } else {
    cur.fail("unknown command '" + op + "'");
  }
  cur.expect(')');
  cur.expect("->");
  c.to = cur.identifier();
  spec.commands.push_back(std::move(c));
}

void parse_body_line(std::string_view line, Frontend& f) {
  Cursor cur(line);
  if (cur.consume("target")) {
    std::string kind = cur.identifier();
    if (kind == "control") {
      f.target_controls.push_back(cur.identifier());
      if (!cur.at_end()) cur.fail("trailing input");
    } else if (kind == "config") {
      f.target_configs.emplace_back(cur.rest());
    } else {
      cur.fail("expected 'control' or 'config' after 'target'");
    }
    return;
  }
  std::string head = cur.identifier();
  cur.expect(':');
  auto set_names = [&](auto& spec) {
    if (head == "controls") spec.controls = names(cur);
    else spec.gamma = names(cur);
  };
  if (head == "controls" || head == "gamma") {
    std::visit(set_names, f.spec);
    if (auto* pds = std::get_if<PdsSpec>(&f.spec); pds && head == "gamma")
      std::erase(pds->gamma, std::string(kBottom));
    if (auto* ompds = std::get_if<OmpdsSpec>(&f.spec); ompds && head == "gamma")
      std::erase(ompds->gamma, std::string(kBottom));
    return;
  }
  if (head == "initial") {
    auto* apds = std::get_if<ApdsSpec>(&f.spec);
    if (!apds) cur.fail("'initial' is only valid for annotated pushdown systems");
    apds->initial = cur.identifier();
    if (!cur.at_end()) cur.fail("trailing input");
    return;
  }
  switch (f.family) {
    case Family::Pds: parse_pds_command(cur, head, std::get<PdsSpec>(f.spec)); break;
    case Family::Ompds: parse_ompds_command(cur, head, std::get<OmpdsSpec>(f.spec)); break;
    case Family::Apds: parse_apds_command(cur, head, std::get<ApdsSpec>(f.spec)); break;
  }
  if (!cur.at_end()) cur.fail("trailing input");
}

}  // namespace

Frontend parse_frontend(std::string_view text) {
  std::optional<Frontend> f;
  std::size_t pos = 0, line_no = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      if (!f) {
        Cursor cur(line);
        f = parse_header(cur);
      } else {
        parse_body_line(line, *f);
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.message(), e.position());
    }
  }
  if (!f) throw ParseError("missing family header such as [pds]", 0);
  std::visit([](const auto& spec) { spec.validate(); }, f->spec);
  return *f;
}

Frontend read_frontend(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_frontend(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.position());
  }
}

Term encode_literal(const Frontend& frontend, std::string_view literal) {
  switch (frontend.family) {
    case Family::Pds: {
      const auto& spec = std::get<PdsSpec>(frontend.spec);
      return PdsCodec(pds_alphabet(spec)).encode(parse_pds_config(literal));
    }
    case Family::Ompds: {
      const auto& spec = std::get<OmpdsSpec>(frontend.spec);
      return OmpdsCodec(ompds_alphabet(spec), spec.stacks).encode(parse_ompds_config(literal));
    }
    case Family::Apds: {
      const auto& spec = std::get<ApdsSpec>(frontend.spec);
      return ApdsCodec(apds_alphabet(spec), spec.order).encode(parse_apds_config(literal, spec.order));
    }
  }
  throw EncodingError("unknown family");
}

CompiledFrontend compile_frontend(const Frontend& frontend) {
  CompiledFrontend out{RootRewriteSystem{}, {}, std::nullopt, {}};
  std::visit(
      [&](const auto& spec) {
        if constexpr (std::is_same_v<std::decay_t<decltype(spec)>, PdsSpec>) {
          auto e = encode_system_pds(spec);
          out.system = e.system;
          out.manifest = e.manifest;
        } else if constexpr (std::is_same_v<std::decay_t<decltype(spec)>, OmpdsSpec>) {
          auto e = encode_system_ompds(spec);
          out.system = e.system;
          out.manifest = e.manifest;
        } else {
          auto e = encode_system_apds(spec);
          out.system = e.system;
          out.manifest = e.manifest;
        }
      },
      frontend.spec);
  AlphabetPtr alpha = out.system.alphabet();
  std::optional<Nfta> target;
  auto add = [&](Nfta part) { target = target ? disjoint_union(*target, part) : std::move(part); };
  for (const auto& p : frontend.target_controls) add(control_target(alpha, p));
  for (const auto& lit : frontend.target_configs) out.target_terms.push_back(encode_literal(frontend, lit));
  if (!out.target_terms.empty()) add(terms_target(alpha, out.target_terms));
  out.target = std::move(target);
  return out;
}

}  // namespace rootsat::enc
