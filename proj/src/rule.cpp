#include "formadp/rule.hpp"

#include <algorithm>
#include <set>

namespace formadp {

void validate_rule(const Rule& r, const Signature& sig,
                   bool require_var_condition) {
  if (r.lhs.empty() || r.rhs.empty())
    throw Error("rule " + std::to_string(r.id) + ": empty side");
  if (r.lhs.is_var())
    throw Error("rule " + std::to_string(r.id) +
                ": left-hand side is a variable");
  SortId ls = sort_of(r.lhs, sig);
  SortId rs = sort_of(r.rhs, sig);
  if (ls != rs)
    throw SortError("rule " + std::to_string(r.id) + ": sides have sorts " +
                    sig.sort_name(ls) + " and " + sig.sort_name(rs));
  if (require_var_condition && !satisfies_var_condition(r))
    throw Error("rule " + std::to_string(r.id) +
                ": right-hand side introduces fresh variables");
}

bool satisfies_var_condition(const Rule& r) {
  std::set<Var> lv = r.lhs.var_set();
  for (const Var& v : r.rhs.var_set())
    if (!lv.count(v)) return false;
  return true;
}

bool rule_equal_mod_renaming(const Rule& a, const Rule& b) {
  // Rename both sides together so shared variables stay shared.
  // Pack each rule as a virtual pair via a two-step walk.
  std::map<Var, Var> fwd, bwd;
  std::function<bool(const Term&, const Term&)> go = [&](const Term& s,
                                                         const Term& t) {
    if (s.is_var() != t.is_var()) return false;
    if (s.is_var()) {
      Var vs = s.as_var(), vt = t.as_var();
      if (vs.sort != vt.sort) return false;
      auto [itf, insf] = fwd.emplace(vs, vt);
      if (!insf && !(itf->second == vt)) return false;
      auto [itb, insb] = bwd.emplace(vt, vs);
      if (!insb && !(itb->second == vs)) return false;
      return true;
    }
    if (s.sym() != t.sym() || s.arity() != t.arity()) return false;
    for (int i = 0; i < s.arity(); ++i)
      if (!go(s.args()[i], t.args()[i])) return false;
    return true;
  };
  return go(a.lhs, b.lhs) && go(a.rhs, b.rhs);
}

const Rule* Mtrs::rule_by_id(int id) const {
  for (const Rule& r : rules)
    if (r.id == id) return &r;
  return nullptr;
}

std::vector<SymbolId> Mtrs::defined_symbols() const {
  std::set<SymbolId> seen;
  std::vector<SymbolId> out;
  for (const Rule& r : rules) {
    SymbolId f = r.lhs.sym();
    if (seen.insert(f).second) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Mtrs::is_defined(SymbolId f) const {
  for (const Rule& r : rules)
    if (r.lhs.sym() == f) return true;
  return false;
}

int Mtrs::max_rule_id() const {
  int m = 0;
  for (const Rule& r : rules) m = std::max(m, r.id);
  return m;
}

Term translate_term(const Term& t, const Signature& to) {
  if (t.is_var()) {
    auto o = to.find_sort("o");
    return Term::var(t.var_name(), o ? *o : to.dpsort());
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(translate_term(a, to));
  return Term::app(to, t.sym(), std::move(args));
}

Mtrs collapse_sorts(const Mtrs& m) {
  Mtrs out;
  out.innermost_only = m.innermost_only;
  SortId o = out.sig.intern_sort("o");
  for (SymbolId f = 0; f < m.sig.symbol_count(); ++f) {
    SortDecl d;
    d.args.assign(m.sig.arity(f), o);
    d.result = o;
    SymbolId nf = out.sig.add_symbol(m.sig.symbol_name(f), std::move(d));
    if (nf != f) throw Error("symbol id drift while collapsing sorts");
  }
  out.sig.copy_symbol_flags(m.sig);
  for (const Rule& r : m.rules) {
    Rule nr = r;
    nr.lhs = translate_term(r.lhs, out.sig);
    nr.rhs = translate_term(r.rhs, out.sig);
    out.rules.push_back(std::move(nr));
  }
  return out;
}

}  // namespace formadp
