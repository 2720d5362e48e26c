#include "rootsat/alphabet.hpp"

#include <algorithm>

namespace rootsat {

RankedAlphabet::RankedAlphabet() { sorts_.push_back("conf"); }

SortId RankedAlphabet::add_sort(std::string_view name) {
  if (auto existing = find_sort(name)) return *existing;
  sorts_.emplace_back(name);
  return static_cast<SortId>(sorts_.size() - 1);
}

SymbolId RankedAlphabet::add_symbol(std::string name, const std::vector<std::string>& arg_sorts,
                                    std::string_view result_sort, SymbolKind kind) {
  if (symbol_index_.count(name)) throw SortError("duplicate symbol '" + name + "'");
  Symbol sym;
  sym.name = std::move(name);
  sym.kind = kind;
  sym.result = add_sort(result_sort);
  for (const auto& s : arg_sorts) {
    SortId id = add_sort(s);
    if (id == kConf) throw SortError("symbol '" + sym.name + "' takes conf as an argument");
    sym.args.push_back(id);
  }
  if (kind == SymbolKind::Control && sym.result != kConf)
    throw SortError("control symbol '" + sym.name + "' must have result sort conf");
  if (kind == SymbolKind::Stack && sym.result == kConf)
    throw SortError("stack symbol '" + sym.name + "' cannot have result sort conf");
  auto id = static_cast<SymbolId>(symbols_.size());
  symbol_index_.emplace(sym.name, id);
  symbols_.push_back(std::move(sym));
  return id;
}

std::optional<SortId> RankedAlphabet::find_sort(std::string_view name) const {
  auto it = std::find(sorts_.begin(), sorts_.end(), name);
  if (it == sorts_.end()) return std::nullopt;
  return static_cast<SortId>(it - sorts_.begin());
}

std::optional<SymbolId> RankedAlphabet::find_symbol(std::string_view name) const {
  auto it = symbol_index_.find(name);
  if (it == symbol_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<SymbolId> RankedAlphabet::symbols_of_sort(SortId sort) const {
  std::vector<SymbolId> out;
  for (const auto& [name, id] : symbol_index_)
    if (symbols_[id].result == sort) out.push_back(id);
  return out;
}

}  // namespace rootsat
