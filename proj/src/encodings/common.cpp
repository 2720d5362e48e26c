#include "rootsat/encodings/common.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "rootsat/automaton_ops.hpp"

namespace rootsat::enc {

std::string Manifest::to_string() const {
  std::string out;
  for (const auto& [command, labels] : entries) {
    out += command + " =>";
    for (const auto& l : labels) out += " " + l;
    out += "\n";
  }
  return out;
}

void check_name(std::string_view what, const std::string& name,
                const std::vector<std::string>& reserved) {
  bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
  for (char c : name)
    ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'');
  if (!ok) throw EncodingError(std::string(what) + " '" + name + "' is not an identifier");
  if (std::find(reserved.begin(), reserved.end(), name) != reserved.end())
    throw EncodingError(std::string(what) + " '" + name + "' uses a reserved name");
}

void check_distinct(std::string_view what, const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw EncodingError(std::string(what) + " '" + n + "' declared twice");
}

Nfta control_target(AlphabetPtr alphabet, const std::string& control) {
  auto id = alphabet->find_symbol(control);
  if (!id || alphabet->symbol(*id).kind != SymbolKind::Control)
    throw EncodingError("unknown control '" + control + "'");
  Afta aut(alphabet);
  std::vector<StateId> of_sort(alphabet->sort_count());
  for (SortId s = 1; s < alphabet->sort_count(); ++s)
    of_sort[s] = aut.add_state("all_" + alphabet->sort_name(s), s);
  StateId target = aut.add_state("at_" + control, RankedAlphabet::kConf);
  aut.set_final(target);
  for (SymbolId f = 0; f < alphabet->symbol_count(); ++f) {
    const Symbol& sym = alphabet->symbol(f);
    if (sym.result == RankedAlphabet::kConf && f != *id) continue;
    PlainTransition tr;
    tr.symbol = f;
    for (SortId a : sym.args) tr.children.push_back({of_sort[a]});
    tr.target = f == *id ? target : of_sort[sym.result];
    aut.add_transition(std::move(tr));
  }
  return Nfta(std::move(aut));
}

Nfta terms_target(AlphabetPtr alphabet, const std::vector<Term>& configs) {
  Nfta out{Afta(alphabet)};
  for (const auto& c : configs) out = disjoint_union(out, singleton_automaton(alphabet, c));
  return out;
}

std::vector<std::string> split_word(std::string_view body) {
  std::vector<std::string> out;
  bool spaced = std::any_of(body.begin(), body.end(),
                            [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (!spaced) {
    for (char c : body) out.emplace_back(1, c);
    return out;
  }
  std::string cur;
  for (char c : body) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string join_word(const std::vector<std::string>& symbols) {
  bool single = std::all_of(symbols.begin(), symbols.end(), [](const auto& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!single && i) out += ' ';
    out += symbols[i];
  }
  return out;
}

}  // namespace rootsat::enc
