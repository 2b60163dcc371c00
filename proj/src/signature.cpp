#include "formadp/signature.hpp"

namespace formadp {

Signature::Signature() { intern_sort(kDpSortName); }

SortId Signature::intern_sort(const std::string& name) {
  auto it = sort_index_.find(name);
  if (it != sort_index_.end()) return it->second;
  SortId id = static_cast<SortId>(sort_names_.size());
  sort_names_.push_back(name);
  sort_index_.emplace(name, id);
  return id;
}

std::optional<SortId> Signature::find_sort(const std::string& name) const {
  auto it = sort_index_.find(name);
  if (it == sort_index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Signature::sort_name(SortId s) const {
  if (s < 0 || s >= sort_count()) throw Error("unknown sort id");
  return sort_names_[s];
}

std::vector<SortId> Signature::user_sorts() const {
  std::vector<SortId> out;
  for (SortId s = 1; s < sort_count(); ++s) out.push_back(s);
  return out;
}

SymbolId Signature::add_symbol(const std::string& name, SortDecl decl) {
  if (symbol_index_.count(name))
    throw Error("symbol already declared: " + name);
  for (SortId s : decl.args) sort_name(s);  // validates
  sort_name(decl.result);
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  SymbolInfo si;
  si.name = name;
  si.decl = std::move(decl);
  symbols_.push_back(std::move(si));
  symbol_index_.emplace(name, id);
  return id;
}

std::optional<SymbolId> Signature::find_symbol(const std::string& name) const {
  auto it = symbol_index_.find(name);
  if (it == symbol_index_.end()) return std::nullopt;
  return it->second;
}

const Signature::SymbolInfo& Signature::info(SymbolId f) const {
  if (f < 0 || f >= symbol_count()) throw Error("unknown symbol id");
  return symbols_[f];
}

const std::string& Signature::symbol_name(SymbolId f) const {
  return info(f).name;
}

const SortDecl& Signature::decl(SymbolId f) const { return info(f).decl; }

SymbolId Signature::mark(SymbolId f) {
  const SymbolInfo& si = info(f);
  if (si.marked) throw Error("cannot mark a marked symbol: " + si.name);
  if (si.marked_id != kNoSymbol) return si.marked_id;
  SortDecl d = si.decl;
  d.result = dpsort();
  std::string name = si.name + "#";
  if (symbol_index_.count(name))
    throw Error("marked name collides with existing symbol: " + name);
  SymbolId id = add_symbol(name, std::move(d));
  symbols_[id].marked = true;
  symbols_[id].unmarked_id = f;
  symbols_[f].marked_id = id;
  return id;
}

std::optional<SymbolId> Signature::marked_of(SymbolId f) const {
  SymbolId m = info(f).marked_id;
  if (m == kNoSymbol) return std::nullopt;
  return m;
}

std::optional<SymbolId> Signature::unmarked_of(SymbolId fsharp) const {
  SymbolId u = info(fsharp).unmarked_id;
  if (u == kNoSymbol) return std::nullopt;
  return u;
}

bool Signature::is_marked(SymbolId f) const { return info(f).marked; }

SymbolId Signature::add_ce_symbol(SortId s) {
  if (s == dpsort()) throw Error("no paired-projection symbol for dpsort");
  std::string base = "c_" + sort_name(s);
  std::string name = base;
  int n = 0;
  while (symbol_index_.count(name)) name = base + "'" + std::to_string(++n);
  SymbolId id = add_symbol(name, SortDecl{{s, s}, s});
  symbols_[id].ce = true;
  return id;
}

bool Signature::is_ce(SymbolId f) const { return info(f).ce; }

void Signature::copy_symbol_flags(const Signature& from) {
  if (from.symbol_count() != symbol_count())
    throw PreconditionError("flag copy between different signatures");
  for (SymbolId f = 0; f < symbol_count(); ++f) {
    if (from.symbols_[f].name != symbols_[f].name)
      throw PreconditionError("flag copy between different signatures");
    symbols_[f].marked = from.symbols_[f].marked;
    symbols_[f].ce = from.symbols_[f].ce;
    symbols_[f].marked_id = from.symbols_[f].marked_id;
    symbols_[f].unmarked_id = from.symbols_[f].unmarked_id;
  }
}

}  // namespace formadp
