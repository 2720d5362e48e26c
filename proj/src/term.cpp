#include "rootsat/term.hpp"

#include <algorithm>
#include <sstream>

namespace rootsat {

struct Term::Node {
  bool is_var = false;
  SymbolId symbol = 0;
  std::string name;
  SortId sort = 0;
  std::vector<Term> children;
  bool ground = true;
  std::size_t height = 1;
  std::size_t size = 1;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::app(const RankedAlphabet& alphabet, SymbolId symbol, std::vector<Term> children) {
  const Symbol& sym = alphabet.symbol(symbol);
  if (children.size() != sym.arity())
    throw SortError("symbol '" + sym.name + "' expects " + std::to_string(sym.arity()) +
                    " arguments, got " + std::to_string(children.size()));
  auto node = std::make_shared<Node>();
  node->symbol = symbol;
  node->name = sym.name;
  node->sort = sym.result;
  node->hash = std::hash<std::string>{}(sym.name);
  for (std::size_t i = 0; i < children.size(); ++i) {
    const Term& c = children[i];
    if (!c.valid()) throw SortError("null child term");
    if (c.sort() != sym.args[i])
      throw SortError("argument " + std::to_string(i + 1) + " of '" + sym.name + "' must have sort " +
                      alphabet.sort_name(sym.args[i]) + ", got " + alphabet.sort_name(c.sort()));
    node->ground = node->ground && c.is_ground();
    node->height = std::max(node->height, c.height() + 1);
    node->size += c.size();
    node->hash = mix(node->hash, c.hash());
  }
  node->children = std::move(children);
  Term t;
  t.node_ = std::move(node);
  return t;
}

Term Term::app(const RankedAlphabet& alphabet, std::string_view symbol, std::vector<Term> children) {
  auto id = alphabet.find_symbol(symbol);
  if (!id) throw SortError("unknown symbol '" + std::string(symbol) + "'");
  return app(alphabet, *id, std::move(children));
}

Term Term::var(std::string name, SortId sort) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->name = std::move(name);
  node->sort = sort;
  node->ground = false;
  node->hash = mix(std::hash<std::string>{}(node->name), 0x5bd1e995U + sort);
  Term t;
  t.node_ = std::move(node);
  return t;
}

bool Term::is_var() const { return node_->is_var; }
SymbolId Term::symbol() const { return node_->symbol; }
const std::string& Term::name() const { return node_->name; }
SortId Term::sort() const { return node_->sort; }
const std::vector<Term>& Term::children() const { return node_->children; }
bool Term::is_ground() const { return node_->ground; }
std::size_t Term::height() const { return node_->height; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::hash() const { return node_->hash; }

Term Term::with_children(const Term& original, std::vector<Term> children) {
  if (original.is_var() || children.size() != original.children().size())
    throw SortError("with_children: shape mismatch on '" + original.name() + "'");
  auto node = std::make_shared<Node>();
  node->symbol = original.symbol();
  node->name = original.name();
  node->sort = original.sort();
  node->hash = std::hash<std::string>{}(node->name);
  for (std::size_t i = 0; i < children.size(); ++i) {
    const Term& c = children[i];
    if (c.sort() != original.children()[i].sort())
      throw SortError("with_children: sort mismatch under '" + original.name() + "'");
    node->ground = node->ground && c.is_ground();
    node->height = std::max(node->height, c.height() + 1);
    node->size += c.size();
    node->hash = mix(node->hash, c.hash());
  }
  node->children = std::move(children);
  Term t;
  t.node_ = std::move(node);
  return t;
}

std::string Term::to_string() const {
  if (!valid()) return "<null>";
  if (is_var()) return "?" + name();
  std::string out = name() + "(";
  for (std::size_t i = 0; i < children().size(); ++i) {
    if (i) out += ',';
    out += children()[i].to_string();
  }
  out += ')';
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.is_var() != b.is_var() || a.name() != b.name() ||
      a.sort() != b.sort())
    return false;
  const auto& ca = a.children();
  const auto& cb = b.children();
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!(ca[i] == cb[i])) return false;
  return true;
}

bool operator<(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return false;
  if (a.is_var() != b.is_var()) return a.is_var();
  if (a.name() != b.name()) return a.name() < b.name();
  if (a.is_var()) return a.sort() < b.sort();
  return std::lexicographical_compare(a.children().begin(), a.children().end(),
                                      b.children().begin(), b.children().end());
}

bool height_less(const Term& a, const Term& b) {
  if (a.height() != b.height()) return a.height() < b.height();
  return a < b;
}

std::string to_string(const Substitution& subst) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : subst) {
    if (!first) out += ", ";
    first = false;
    out += "?" + v + " -> " + t.to_string();
  }
  return out + "}";
}

namespace {

void collect_vars(const Term& t, std::map<std::string, SortId>& out) {
  if (t.is_var()) {
    out.emplace(t.name(), t.sort());
    return;
  }
  for (const auto& c : t.children()) collect_vars(c, out);
}

void collect_occurrences(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    out.push_back(t.name());
    return;
  }
  for (const auto& c : t.children()) collect_occurrences(c, out);
}

Term rebuild(const Term& original, std::vector<Term> children) {
  return Term::with_children(original, std::move(children));
}

}  // namespace

std::map<std::string, SortId> variables(const Term& pattern) {
  std::map<std::string, SortId> out;
  collect_vars(pattern, out);
  return out;
}

std::vector<std::string> variable_occurrences(const Term& pattern) {
  std::vector<std::string> out;
  collect_occurrences(pattern, out);
  return out;
}

bool is_linear(const Term& pattern) {
  auto occ = variable_occurrences(pattern);
  std::sort(occ.begin(), occ.end());
  return std::adjacent_find(occ.begin(), occ.end()) == occ.end();
}

Term substitute(const Term& pattern, const Substitution& subst) {
  if (pattern.is_var()) {
    auto it = subst.find(pattern.name());
    return it == subst.end() ? pattern : it->second;
  }
  if (pattern.is_ground()) return pattern;
  std::vector<Term> kids;
  kids.reserve(pattern.children().size());
  for (const auto& c : pattern.children()) kids.push_back(substitute(c, subst));
  return rebuild(pattern, std::move(kids));
}

namespace {

bool match_into(const Term& p, const Term& t, Substitution& out) {
  if (p.is_var()) {
    if (p.sort() != t.sort()) return false;
    auto [it, inserted] = out.emplace(p.name(), t);
    return inserted || it->second == t;
  }
  if (t.is_var() || p.name() != t.name() || p.children().size() != t.children().size())
    return false;
  for (std::size_t i = 0; i < p.children().size(); ++i)
    if (!match_into(p.children()[i], t.children()[i], out)) return false;
  return true;
}

Term resolve(const Term& t, const Substitution& bindings) {
  if (t.is_var()) {
    auto it = bindings.find(t.name());
    return it == bindings.end() ? t : resolve(it->second, bindings);
  }
  if (t.is_ground()) return t;
  std::vector<Term> kids;
  for (const auto& c : t.children()) kids.push_back(resolve(c, bindings));
  return rebuild(t, std::move(kids));
}

bool occurs(const std::string& v, const Term& t, const Substitution& bindings) {
  if (t.is_var()) {
    if (t.name() == v) return true;
    auto it = bindings.find(t.name());
    return it != bindings.end() && occurs(v, it->second, bindings);
  }
  for (const auto& c : t.children())
    if (occurs(v, c, bindings)) return true;
  return false;
}

Term walk(Term t, const Substitution& bindings) {
  while (t.is_var()) {
    auto it = bindings.find(t.name());
    if (it == bindings.end()) break;
    t = it->second;
  }
  return t;
}

}  // namespace

std::optional<Substitution> match_root(const Term& pattern, const Term& term) {
  Substitution out;
  if (!match_into(pattern, term, out)) return std::nullopt;
  return out;
}

Term rename_variables(const Term& pattern,
                      const std::function<std::string(const std::string&)>& rename) {
  if (pattern.is_var()) return Term::var(rename(pattern.name()), pattern.sort());
  if (pattern.is_ground()) return pattern;
  std::vector<Term> kids;
  for (const auto& c : pattern.children()) kids.push_back(rename_variables(c, rename));
  return rebuild(pattern, std::move(kids));
}

std::optional<Substitution> unify(const Term& left, const Term& right) {
  auto left_vars = variables(left);
  auto right_vars = variables(right);
  std::set<std::string> taken;
  for (const auto& [v, s] : left_vars) taken.insert(v);
  for (const auto& [v, s] : right_vars) taken.insert(v);
  std::map<std::string, std::string> renaming;
  for (const auto& [v, s] : right_vars) {
    if (!left_vars.count(v)) continue;
    std::string fresh = v + "'";
    while (taken.count(fresh)) fresh += "'";
    taken.insert(fresh);
    renaming[v] = fresh;
  }
  Term r = renaming.empty() ? right : rename_variables(right, [&](const std::string& v) {
    auto it = renaming.find(v);
    return it == renaming.end() ? v : it->second;
  });

  Substitution bindings;
  std::vector<std::pair<Term, Term>> work{{left, r}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    a = walk(a, bindings);
    b = walk(b, bindings);
    if (a.sort() != b.sort()) return std::nullopt;
    if (a.is_var() && b.is_var() && a.name() == b.name()) continue;
    if (a.is_var()) {
      if (occurs(a.name(), b, bindings)) return std::nullopt;
      bindings[a.name()] = b;
      continue;
    }
    if (b.is_var()) {
      if (occurs(b.name(), a, bindings)) return std::nullopt;
      bindings[b.name()] = a;
      continue;
    }
    if (a.name() != b.name() || a.children().size() != b.children().size()) return std::nullopt;
    for (std::size_t i = a.children().size(); i-- > 0;)
      work.emplace_back(a.children()[i], b.children()[i]);
  }
  Substitution out;
  for (const auto& [v, t] : bindings) out[v] = resolve(t, bindings);
  return out;
}

std::vector<Term> enumerate_terms(const RankedAlphabet& alphabet, SortId sort,
                                  std::size_t max_depth) {
  if (sort >= alphabet.sort_count()) throw SortError("unknown sort id " + std::to_string(sort));
  // layers[s] holds every term of sort s with height <= current level.
  std::vector<std::vector<Term>> layers(alphabet.sort_count());
  for (std::size_t level = 1; level <= max_depth + 1; ++level) {
    std::vector<std::vector<Term>> next = layers;
    for (SymbolId f = 0; f < alphabet.symbol_count(); ++f) {
      const Symbol& sym = alphabet.symbol(f);
      std::vector<const std::vector<Term>*> pools;
      bool possible = true;
      for (SortId s : sym.args) {
        pools.push_back(&layers[s]);
        if (layers[s].empty()) possible = false;
      }
      if (!possible) continue;
      std::vector<std::size_t> idx(sym.arity(), 0);
      while (true) {
        std::vector<Term> kids;
        std::size_t top = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          kids.push_back((*pools[i])[idx[i]]);
          top = std::max(top, kids.back().height());
        }
        if (top + 1 == level) next[sym.result].push_back(Term::app(alphabet, f, std::move(kids)));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == pools[i]->size()) idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
    layers = std::move(next);
  }
  auto out = std::move(layers[sort]);
  std::sort(out.begin(), out.end(), height_less);
  return out;
}

}  // namespace rootsat
