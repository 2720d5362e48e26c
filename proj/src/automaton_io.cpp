#include "rootsat/automaton_io.hpp"

#include <fstream>
#include <sstream>

#include "rootsat/parse.hpp"

namespace rootsat {

namespace {

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
    line.remove_suffix(1);
  return line;
}

bool starts_with_keyword(std::string_view line, std::string_view kw) {
  auto start = line.find_first_not_of(" \t");
  if (start == std::string_view::npos) return false;
  line = line.substr(start);
  return line.size() > kw.size() && line.substr(0, kw.size()) == kw &&
         (line[kw.size()] == ' ' || line[kw.size()] == '\t');
}

StateId lookup_state(const Afta& aut, Cursor& cur) {
  std::size_t at = cur.position();
  std::string name = cur.name();
  auto id = aut.find_state(name);
  if (!id) throw ParseError("unknown state '" + name + "'", at);
  return *id;
}

StateSet parse_state_set(const Afta& aut, Cursor& cur) {
  cur.expect('{');
  std::vector<StateId> out;
  if (!cur.consume('}')) {
    do out.push_back(lookup_state(aut, cur));
    while (cur.consume(','));
    cur.expect('}');
  }
  return make_state_set(std::move(out));
}

Provenance parse_provenance(Cursor& cur, std::string* rule, std::size_t& saturated_count) {
  Provenance p;
  if (!cur.consume('@')) return p;
  std::string kind = cur.identifier();
  if (kind == "derived") {
    p.origin = Origin::Derived;
  } else if (kind == "sat") {
    if (!rule) cur.fail("@sat is only valid on deep transitions");
    cur.expect('(');
    *rule = cur.identifier();
    cur.expect(')');
    p.origin = Origin::Saturated;
    p.justification = saturated_count++;
  } else {
    cur.fail("unknown provenance '" + kind + "'");
  }
  return p;
}

void parse_line(std::string_view line, std::size_t base, Document& doc,
                std::shared_ptr<RankedAlphabet>& building, std::size_t& saturated_count) {
  auto freeze = [&] {
    if (!doc.alphabet) doc.alphabet = building;
  };
  auto ensure_automaton = [&] {
    freeze();
    if (!doc.automaton) doc.automaton.emplace(doc.alphabet);
  };
  if (starts_with_keyword(line, "state")) {
    ensure_automaton();
    Cursor cur(line, base);
    cur.expect("state");
    std::string name = cur.name();
    cur.expect(':');
    std::size_t at = cur.position();
    std::string sort = cur.identifier();
    auto sid = doc.alphabet->find_sort(sort);
    if (!sid) throw ParseError("unknown sort '" + sort + "'", at);
    if (!cur.at_end()) cur.fail("trailing input");
    try {
      doc.automaton->add_state(name, *sid);
    } catch (const Error& e) {
      throw ParseError(e.what(), base);
    }
    return;
  }
  if (starts_with_keyword(line, "final")) {
    ensure_automaton();
    Cursor cur(line, base);
    cur.expect("final");
    StateId s = lookup_state(*doc.automaton, cur);
    if (!cur.at_end()) cur.fail("trailing input");
    try {
      doc.automaton->set_final(s);
    } catch (const Error& e) {
      throw ParseError(e.what(), base);
    }
    return;
  }
  if (starts_with_keyword(line, "trans")) {
    ensure_automaton();
    Cursor cur(line, base);
    cur.expect("trans");
    std::size_t at = cur.position();
    std::string sym = cur.identifier();
    auto id = doc.alphabet->find_symbol(sym);
    if (!id) throw ParseError("unknown symbol '" + sym + "'", at);
    PlainTransition t;
    t.symbol = *id;
    cur.expect('(');
    if (!cur.consume(')')) {
      do t.children.push_back(parse_state_set(*doc.automaton, cur));
      while (cur.consume(','));
      cur.expect(')');
    }
    cur.expect("->");
    t.target = lookup_state(*doc.automaton, cur);
    t.provenance = parse_provenance(cur, nullptr, saturated_count);
    if (!cur.at_end()) cur.fail("trailing input");
    try {
      doc.automaton->add_transition(std::move(t));
    } catch (const Error& e) {
      throw ParseError(e.what(), at);
    }
    return;
  }
  if (starts_with_keyword(line, "deep")) {
    ensure_automaton();
    Cursor cur(line, base);
    cur.expect("deep");
    std::size_t at = cur.position();
    DeepTransition t;
    t.pattern = parse_term(cur, *doc.alphabet, RankedAlphabet::kConf);
    auto vars = variables(t.pattern);
    cur.expect('[');
    if (!cur.consume(']')) {
      do {
        cur.expect('?');
        std::string v = cur.identifier();
        if (!vars.count(v)) cur.fail("?" + v + " does not occur in the pattern");
        cur.expect(':');
        t.constraints[v] = parse_state_set(*doc.automaton, cur);
      } while (cur.consume(','));
      cur.expect(']');
    }
    cur.expect("->");
    t.target = lookup_state(*doc.automaton, cur);
    t.provenance = parse_provenance(cur, &t.rule, saturated_count);
    if (!cur.at_end()) cur.fail("trailing input");
    try {
      doc.automaton->add_deep(std::move(t));
    } catch (const Error& e) {
      throw ParseError(e.what(), at);
    }
    return;
  }
  auto colon = line.find(':');
  if (colon == std::string_view::npos) throw ParseError("unrecognized line", base);
  bool is_rule = line.find('(', colon) != std::string_view::npos;
  if (is_rule) {
    freeze();
    try {
      doc.rules.push_back(parse_rule_line(line, *doc.alphabet));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), base);
    }
    return;
  }
  if (doc.alphabet) throw ParseError("alphabet lines must precede rules and automaton lines", base);
  try {
    parse_alphabet_line(line, *building);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), base);
  }
}

}  // namespace

Document parse_document(std::string_view text) {
  Document doc;
  auto building = std::make_shared<RankedAlphabet>();
  std::size_t saturated_count = 0;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = strip_comment(text.substr(pos, end - pos));
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      try {
        parse_line(line, pos, doc, building, saturated_count);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.message(), e.position());
      }
    }
    pos = end + 1;
  }
  if (!doc.alphabet) doc.alphabet = building;
  return doc;
}

Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.position());
  }
}

std::string write_alphabet(const RankedAlphabet& alphabet) {
  std::string out;
  for (SymbolId f = 0; f < alphabet.symbol_count(); ++f) out += format_alphabet_line(alphabet, f) + "\n";
  return out;
}

std::string write_rules(const std::vector<RewriteRule>& rules) {
  std::string out;
  for (const auto& r : rules) out += r.to_string() + "\n";
  return out;
}

std::string format_transition(const Afta& aut, const PlainTransition& t) {
  std::string out = "trans " + aut.alphabet()->symbol(t.symbol).name + "(";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ',';
    out += aut.state_set_string(t.children[i]);
  }
  out += ") -> " + aut.state(t.target).name;
  if (t.provenance.origin == Origin::Derived) out += " @derived";
  return out;
}

std::string format_deep(const Afta& aut, const DeepTransition& t) {
  std::string out = "deep " + t.pattern.to_string() + " [";
  bool first = true;
  for (const auto& [v, set] : t.constraints) {
    if (!first) out += ',';
    first = false;
    out += "?" + v + ":" + aut.state_set_string(set);
  }
  out += "] -> " + aut.state(t.target).name;
  if (t.provenance.origin == Origin::Saturated) out += " @sat(" + t.rule + ")";
  return out;
}

std::string write_automaton_body(const Afta& aut) {
  std::string out;
  for (StateId s = 0; s < aut.state_count(); ++s)
    out += "state " + aut.state(s).name + " : " + aut.alphabet()->sort_name(aut.state(s).sort) + "\n";
  for (StateId f : aut.finals()) out += "final " + aut.state(f).name + "\n";
  for (const auto& t : aut.transitions()) out += format_transition(aut, t) + "\n";
  for (const auto& t : aut.deep_transitions()) out += format_deep(aut, t) + "\n";
  return out;
}

std::string write_document(const Afta& automaton, const std::vector<RewriteRule>& rules) {
  return write_alphabet(*automaton.alphabet()) + write_rules(rules) + write_automaton_body(automaton);
}

std::string write_system(const RootRewriteSystem& system) {
  return write_alphabet(*system.alphabet()) + write_rules(system.rules());
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string provenance_text(const Provenance& p, const std::string& rule) {
  switch (p.origin) {
    case Origin::Original: return "original";
    case Origin::Derived: return "derived state";
    case Origin::Saturated:
      return "saturated by " + rule + " (justification " + std::to_string(p.justification) + ")";
  }
  return "";
}

}  // namespace

std::string to_dot(const Afta& aut) {
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=BT;\n";
  for (StateId s = 0; s < aut.state_count(); ++s) {
    const auto& st = aut.state(s);
    out << "  " << quote(st.name) << " [shape=" << (aut.is_final(s) ? "doublecircle" : "circle")
        << ", label=" << quote(st.name + " : " + aut.alphabet()->sort_name(st.sort)) << "];\n";
  }
  for (std::size_t i = 0; i < aut.transitions().size(); ++i) {
    const auto& t = aut.transitions()[i];
    std::string node = "t" + std::to_string(i);
    out << "  " << quote(node) << " [shape=box, label=" << quote(aut.alphabet()->symbol(t.symbol).name)
        << ", tooltip=" << quote(provenance_text(t.provenance, "")) << "];\n";
    for (std::size_t c = 0; c < t.children.size(); ++c)
      for (StateId s : t.children[c])
        out << "  " << quote(aut.state(s).name) << " -> " << quote(node) << " [label="
            << quote(std::to_string(c + 1)) << "];\n";
    out << "  " << quote(node) << " -> " << quote(aut.state(t.target).name) << ";\n";
  }
  for (std::size_t i = 0; i < aut.deep_transitions().size(); ++i) {
    const auto& t = aut.deep_transitions()[i];
    std::string node = "d" + std::to_string(i);
    out << "  " << quote(node) << " [shape=box, style=rounded, label=" << quote(t.pattern.to_string())
        << ", tooltip=" << quote(provenance_text(t.provenance, t.rule)) << "];\n";
    for (const auto& [v, set] : t.constraints)
      for (StateId s : set)
        out << "  " << quote(aut.state(s).name) << " -> " << quote(node) << " [label=" << quote("?" + v)
            << "];\n";
    out << "  " << quote(node) << " -> " << quote(aut.state(t.target).name) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace rootsat
