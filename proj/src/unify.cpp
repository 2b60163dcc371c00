#include "formadp/unify.hpp"

#include <functional>
#include <map>

namespace formadp {

namespace {

bool occurs(const Var& v, const Term& t, const std::map<Var, Term>& bound) {
  if (t.is_var()) {
    Var w = t.as_var();
    if (w == v) return true;
    auto it = bound.find(w);
    return it != bound.end() && occurs(v, it->second, bound);
  }
  for (const Term& a : t.args())
    if (occurs(v, a, bound)) return true;
  return false;
}

/// Walks through the binding chain at the root only.
Term walk(Term t, const std::map<Var, Term>& bound) {
  while (t.is_var()) {
    auto it = bound.find(t.as_var());
    if (it == bound.end()) break;
    t = it->second;
  }
  return t;
}

bool solve(const Term& a, const Term& b, std::map<Var, Term>& bound) {
  Term s = walk(a, bound);
  Term t = walk(b, bound);
  if (s.is_var() && t.is_var() && s == t) return true;
  if (s.is_var()) {
    Var v = s.as_var();
    if (t.sort() != v.sort) return false;
    if (occurs(v, t, bound)) return false;
    bound.emplace(v, t);
    return true;
  }
  if (t.is_var()) return solve(t, s, bound);
  if (s.sym() != t.sym()) return false;
  for (int i = 0; i < s.arity(); ++i)
    if (!solve(s.args()[i], t.args()[i], bound)) return false;
  return true;
}

/// Resolves every binding through the triangular map; acyclic by the occurs
/// check, so the recursion terminates.
Term resolve(const Term& t, const std::map<Var, Term>& bound) {
  if (t.is_var()) {
    auto it = bound.find(t.as_var());
    if (it == bound.end()) return t;
    return resolve(it->second, bound);
  }
  std::vector<Term> args;
  bool changed = false;
  args.reserve(t.args().size());
  for (const Term& x : t.args()) {
    Term nx = resolve(x, bound);
    if (!(nx == x)) changed = true;
    args.push_back(std::move(nx));
  }
  return changed ? t.with_args(std::move(args)) : t;
}

}  // namespace

std::optional<Subst> unify(const Term& s, const Term& t) {
  std::map<Var, Term> bound;
  if (!solve(s, t, bound)) return std::nullopt;
  Subst out;
  for (const auto& [v, raw] : bound) out.bind(v, resolve(raw, bound));
  return out;
}

bool unifies_renamed_apart(const Term& s, const Term& t) {
  FreshGen gen;
  gen.reserve_names_of(s);
  gen.reserve_names_of(t);
  Term t2 = rename_vars(t, gen);
  return unify(s, t2).has_value();
}

Term tcap(const Term& t, const std::vector<Rule>& rules, const Signature& sig,
          FreshGen& gen) {
  if (t.is_var()) return Term::var(gen.next(t.var_sort()));
  std::vector<Term> capped;
  capped.reserve(t.args().size());
  for (const Term& a : t.args()) capped.push_back(tcap(a, rules, sig, gen));
  Term candidate = t.with_args(std::move(capped));
  for (const Rule& r : rules) {
    if (unifies_renamed_apart(candidate, r.lhs))
      return Term::var(gen.next(candidate.sort()));
  }
  return candidate;
}

Term tcap(const Term& t, const std::vector<Rule>& rules, const Signature& sig) {
  FreshGen gen;
  gen.reserve_names_of(t);
  return tcap(t, rules, sig, gen);
}

}  // namespace formadp
