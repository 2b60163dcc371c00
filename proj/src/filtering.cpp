#include "formadp/filtering.hpp"

#include <algorithm>

namespace formadp {

void ArgumentFiltering::set(const Signature& sig, SymbolId f,
                            std::vector<int> regarded) {
  int n = sig.arity(f);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  if (regarded == all) {
    entries_.erase(f);
    return;
  }
  if (sig.is_ce(f))
    throw Error("paired-projection symbol " + sig.symbol_name(f) +
                " cannot be filtered");
  int prev = 0;
  for (int i : regarded) {
    if (i <= prev || i > n)
      throw Error("bad filtering for " + sig.symbol_name(f));
    prev = i;
  }
  entries_[f] = std::move(regarded);
}

std::vector<int> ArgumentFiltering::regarded(const Signature& sig,
                                             SymbolId f) const {
  auto it = entries_.find(f);
  if (it != entries_.end()) return it->second;
  std::vector<int> all(sig.arity(f));
  for (int i = 0; i < sig.arity(f); ++i) all[i] = i + 1;
  return all;
}

bool ArgumentFiltering::trivial_for(const Signature& sig, SymbolId f) const {
  (void)sig;
  return entries_.find(f) == entries_.end();
}

std::string ArgumentFiltering::to_string(const Signature& sig) const {
  if (entries_.empty()) return "{}";
  std::string out = "{";
  bool first = true;
  for (const auto& [f, idx] : entries_) {
    if (!first) out += ", ";
    first = false;
    out += sig.symbol_name(f) + ": [";
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(idx[i]);
    }
    out += "]";
  }
  return out + "}";
}

AppliedFiltering::AppliedFiltering(const Signature& sig,
                                   const ArgumentFiltering& pi)
    : filtered_(sig), pi_(pi) {
  for (const auto& [f, idx] : pi.entries()) {
    const SortDecl& d = sig.decl(f);
    SortDecl nd;
    for (int i : idx) nd.args.push_back(d.args[i - 1]);
    nd.result = d.result;
    std::string name = sig.symbol_name(f) + "@";
    for (int i : idx) name += std::to_string(i);
    SymbolId nf = filtered_.add_symbol(name, std::move(nd));
    renamed_.emplace(f, nf);
  }
}

SymbolId AppliedFiltering::filtered_symbol(SymbolId f) const {
  auto it = renamed_.find(f);
  return it == renamed_.end() ? f : it->second;
}

Term AppliedFiltering::filter(const Term& t) const {
  if (t.is_var()) return t;
  SymbolId nf = filtered_symbol(t.sym());
  std::vector<Term> args;
  for (int i : pi_.regarded(filtered_, t.sym()))
    args.push_back(filter(t.args()[i - 1]));
  return Term::app(filtered_, nf, std::move(args));
}

Rule AppliedFiltering::filter(const Rule& r) const {
  Rule out = r;
  out.lhs = filter(r.lhs);
  out.rhs = filter(r.rhs);
  return out;
}

Subst AppliedFiltering::filter(const Subst& s) const {
  Subst out;
  for (const auto& [v, t] : s.entries()) out.bind(v, filter(t));
  return out;
}

std::optional<Position> AppliedFiltering::filter_position(
    const Term& t, const Position& pos) const {
  Position out;
  const Term* cur = &t;
  for (int i : pos) {
    if (cur->is_var()) throw Error("position under a variable");
    std::vector<int> reg = pi_.regarded(filtered_, cur->sym());
    auto it = std::find(reg.begin(), reg.end(), i + 1);
    if (it == reg.end()) return std::nullopt;
    out.push_back(static_cast<int>(it - reg.begin()));
    cur = &cur->args()[i];
  }
  return out;
}

}  // namespace formadp
