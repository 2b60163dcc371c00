#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "formadp/dp.hpp"
#include "formadp/parser.hpp"
#include "formadp/rule.hpp"
#include "formadp/term.hpp"

namespace formadp::testing {

/// The list/number system used throughout the suite. Rules are numbered
/// 1..11 in this order; the interesting players are the Ack recursion, the
/// list folder Big and the random drop Rnd.
inline const char* kRunningText = R"((VAR x y z)
(SIG
  (O -> NAT)
  (S NAT -> NAT)
  (Nil -> LIST)
  (Err -> RESULT)
  (Cons NAT LIST -> LIST)
  (Ack NAT NAT -> NAT)
  (Big NAT LIST -> NAT)
  (Upd LIST -> LIST)
  (Run LIST -> RESULT)
  (Return NAT -> RESULT)
  (Rnd NAT -> NAT)
)
(RULES
  Rnd(x) -> x
  Rnd(S(x)) -> Rnd(x)
  Upd(Nil) -> Nil
  Run(Nil) -> Err
  Ack(O,y) -> S(y)
  Big(x,Nil) -> x
  Big(x,Cons(y,z)) -> Big(Ack(x,y),Upd(z))
  Upd(Cons(x,y)) -> Cons(Rnd(x),Upd(y))
  Run(Cons(x,y)) -> Return(Big(x,y))
  Ack(S(x),y) -> Ack(x,S(y))
  Ack(S(x),S(y)) -> Ack(x,Ack(S(x),y))
))";

inline Mtrs running_system() { return parse_problem(kRunningText).system; }

/// Single-sorted variant (no SIG block; everything gets sort o).
inline Mtrs running_system_unsorted() {
  std::string text = kRunningText;
  auto sig_open = text.find("(SIG");
  auto rules_open = text.find("(RULES");
  return parse_problem(text.substr(0, sig_open) + text.substr(rules_open))
      .system;
}

// --- term construction shorthands ---

inline Term mk(const Signature& sig, const std::string& f,
               std::vector<Term> args = {}) {
  auto id = sig.find_symbol(f);
  if (!id) throw Error("test helper: no symbol " + f);
  return Term::app(sig, *id, std::move(args));
}

inline Term mkvar(const Signature& sig, const std::string& name,
                  const std::string& sort) {
  auto s = sig.find_sort(sort);
  if (!s) throw Error("test helper: no sort " + sort);
  return Term::var(name, *s);
}

// --- rule set comparisons ---

inline std::vector<int> ids_of(const std::vector<Rule>& rules) {
  std::vector<int> out;
  for (const Rule& r : rules) out.push_back(r.id);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool contains_shape(const std::vector<Rule>& rules, const Rule& shape) {
  for (const Rule& r : rules)
    if (rule_equal_mod_renaming(r, shape)) return true;
  return false;
}

/// Set equality up to renaming and duplicates.
inline bool same_rules_mod_renaming(const std::vector<Rule>& a,
                                    const std::vector<Rule>& b) {
  for (const Rule& r : a)
    if (!contains_shape(b, r)) return false;
  for (const Rule& r : b)
    if (!contains_shape(a, r)) return false;
  return true;
}

inline const Rule* pair_with_root(const std::vector<Rule>& pairs,
                                  const Signature& sig,
                                  const std::string& lhs_root,
                                  const std::string& rhs_root) {
  for (const Rule& p : pairs) {
    if (sig.symbol_name(p.lhs.sym()) == lhs_root &&
        p.rhs.is_app() && sig.symbol_name(p.rhs.sym()) == rhs_root)
      return &p;
  }
  return nullptr;
}

// --- random systems for the property suite ---

struct GenOpts {
  int max_rules = 5;
  int max_lhs_depth = 2;
  int max_rhs_depth = 3;
};

/// Left-linear single-sorted system over constants a,b,c, unary f,g,h and
/// binary p,q. Right-hand sides only use left-hand-side variables, so the
/// variable condition holds by construction.
inline Mtrs random_system(std::mt19937& rng, const GenOpts& opts = {}) {
  Mtrs m;
  SortId o = m.sig.intern_sort("o");
  auto add = [&](const std::string& name, int arity) {
    SortDecl d;
    d.args.assign(arity, o);
    d.result = o;
    return m.sig.add_symbol(name, d);
  };
  std::vector<SymbolId> consts = {add("a", 0), add("b", 0), add("c", 0)};
  std::vector<SymbolId> unary = {add("f", 1), add("g", 1), add("h", 1)};
  std::vector<SymbolId> binary = {add("p", 2), add("q", 2)};
  std::vector<SymbolId> nonconst = unary;
  nonconst.insert(nonconst.end(), binary.begin(), binary.end());
  std::vector<SymbolId> all = consts;
  all.insert(all.end(), nonconst.begin(), nonconst.end());

  auto pick = [&](const std::vector<SymbolId>& from) {
    return from[std::uniform_int_distribution<std::size_t>(
        0, from.size() - 1)(rng)];
  };
  auto chance = [&](double prob) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prob;
  };

  int var_counter = 0;
  // left-linear pattern: every variable slot gets a fresh name
  auto gen_pattern = [&](auto&& self, int depth) -> Term {
    if (depth <= 0 || chance(0.45))
      return Term::var("x" + std::to_string(++var_counter), o);
    SymbolId f = chance(0.3) ? pick(consts) : pick(nonconst);
    std::vector<Term> args;
    for (int i = 0; i < m.sig.arity(f); ++i) args.push_back(self(self, depth - 1));
    return Term::app(m.sig, f, std::move(args));
  };
  auto gen_rhs = [&](auto&& self, int depth,
                     const std::vector<Var>& vars) -> Term {
    if (!vars.empty() && (depth <= 0 || chance(0.35)))
      return Term::var(vars[std::uniform_int_distribution<std::size_t>(
                           0, vars.size() - 1)(rng)]);
    if (depth <= 0) return Term::app(m.sig, pick(consts), {});
    SymbolId f = chance(0.25) ? pick(consts) : pick(all);
    std::vector<Term> args;
    for (int i = 0; i < m.sig.arity(f); ++i)
      args.push_back(self(self, depth - 1, vars));
    return Term::app(m.sig, f, std::move(args));
  };

  int n = std::uniform_int_distribution<int>(1, opts.max_rules)(rng);
  for (int i = 1; i <= n; ++i) {
    var_counter = 0;
    SymbolId root = pick(nonconst);
    std::vector<Term> args;
    for (int k = 0; k < m.sig.arity(root); ++k)
      args.push_back(gen_pattern(gen_pattern, opts.max_lhs_depth - 1));
    Rule r;
    r.id = i;
    r.lhs = Term::app(m.sig, root, std::move(args));
    r.rhs = gen_rhs(gen_rhs, opts.max_rhs_depth, r.lhs.vars());
    validate_rule(r, m.sig, true);
    m.rules.push_back(std::move(r));
  }
  return m;
}

/// Random ground term over the generator's signature.
inline Term random_ground_term(std::mt19937& rng, const Signature& sig,
                               int depth) {
  std::vector<SymbolId> consts, other;
  for (SymbolId f = 0; f < sig.symbol_count(); ++f)
    (sig.arity(f) == 0 ? consts : other).push_back(f);
  auto pick = [&](const std::vector<SymbolId>& from) {
    return from[std::uniform_int_distribution<std::size_t>(
        0, from.size() - 1)(rng)];
  };
  if (depth <= 0 || std::uniform_int_distribution<int>(0, 2)(rng) == 0)
    return Term::app(sig, pick(consts), {});
  SymbolId f = pick(other);
  std::vector<Term> args;
  for (int i = 0; i < sig.arity(f); ++i)
    args.push_back(random_ground_term(rng, sig, depth - 1));
  return Term::app(sig, f, std::move(args));
}

}  // namespace formadp::testing
