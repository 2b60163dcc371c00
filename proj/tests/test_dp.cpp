#include "doctest.h"

#include <algorithm>
#include <set>

#include "formadp/dp.hpp"
#include "formadp/rule_filters.hpp"

#include "helpers.hpp"

using namespace formadp;
using namespace formadp::testing;

namespace {

/// Builds the ten expected pairs of the list/number system in a signature
/// that already contains the marked symbols.
std::vector<Rule> expected_pairs(Signature& sig) {
  auto marked = [&](const char* f) { return sig.mark(*sig.find_symbol(f)); };
  SymbolId rnd = marked("Rnd"), upd = marked("Upd"), run = marked("Run"),
           ack = marked("Ack"), big = marked("Big");
  Term x = mkvar(sig, "x", "NAT");
  Term y = mkvar(sig, "y", "NAT");
  Term xl = mkvar(sig, "x", "NAT");
  Term yl = mkvar(sig, "y", "LIST");
  Term z = mkvar(sig, "z", "LIST");
  auto S = [&](Term t) { return mk(sig, "S", {t}); };
  auto A = [&](SymbolId f, std::vector<Term> args) {
    return Term::app(sig, f, std::move(args));
  };

  std::vector<Rule> out;
  auto pair = [&](Term l, Term r) { out.push_back(Rule{0, l, r, {}}); };
  // from Rnd(S(x)) -> Rnd(x)
  pair(A(rnd, {S(x)}), A(rnd, {x}));
  // from Big(x,Cons(y,z)) -> Big(Ack(x,y),Upd(z))
  Term big_lhs = A(big, {x, mk(sig, "Cons", {y, z})});
  pair(big_lhs, A(big, {mk(sig, "Ack", {x, y}), mk(sig, "Upd", {z})}));
  pair(big_lhs, A(ack, {x, y}));
  pair(big_lhs, A(upd, {z}));
  // from Upd(Cons(x,y)) -> Cons(Rnd(x),Upd(y))
  Term upd_lhs = A(upd, {mk(sig, "Cons", {xl, yl})});
  pair(upd_lhs, A(rnd, {xl}));
  pair(upd_lhs, A(upd, {yl}));
  // from Run(Cons(x,y)) -> Return(Big(x,y))
  pair(A(run, {mk(sig, "Cons", {xl, yl})}), A(big, {xl, yl}));
  // from Ack(S(x),y) -> Ack(x,S(y))
  pair(A(ack, {S(x), y}), A(ack, {x, S(y)}));
  // from Ack(S(x),S(y)) -> Ack(x,Ack(S(x),y))
  Term ack_lhs = A(ack, {S(x), S(y)});
  pair(ack_lhs, A(ack, {x, mk(sig, "Ack", {S(x), y})}));
  pair(ack_lhs, A(ack, {S(x), y}));
  return out;
}

}  // namespace

TEST_CASE("dependency pairs of the list/number system") {
  Mtrs m = running_system();
  DpResult dp = dependency_pairs(m);

  REQUIRE(dp.pairs.size() == 10);
  // pair ids continue after the last rule id
  for (std::size_t i = 0; i < dp.pairs.size(); ++i)
    CHECK(dp.pairs[i].id == 12 + static_cast<int>(i));

  // build the expected pairs over the produced signature so the marked
  // symbols resolve to the same ids (mark is idempotent)
  Signature expected_sig = dp.sig;
  std::vector<Rule> want = expected_pairs(expected_sig);
  CHECK(same_rules_mod_renaming(dp.pairs, want));

  // marked symbols live in dpsort and mirror the argument sorts
  SymbolId big_sharp = *dp.sig.find_symbol("Big#");
  CHECK(dp.sig.is_marked(big_sharp));
  CHECK(dp.sig.result_sort(big_sharp) == dp.sig.dpsort());
  CHECK(dp.sig.decl(big_sharp).args ==
        dp.sig.decl(*dp.sig.find_symbol("Big")).args);
  CHECK(dp.sig.unmarked_of(big_sharp) == dp.sig.find_symbol("Big"));

  // constructors are never marked
  CHECK_FALSE(dp.sig.find_symbol("Cons#").has_value());
  CHECK_FALSE(dp.sig.find_symbol("S#").has_value());
}

TEST_CASE("duplicate pairs are emitted once") {
  // both c-arguments yield the same pair g#(x) modulo renaming
  Mtrs m = parse_problem("(VAR x)(RULES f(x) -> c(g(x), g(x)) g(x) -> x)")
               .system;
  DpResult dp = dependency_pairs(m);
  REQUIRE(dp.pairs.size() == 1);
  CHECK(dp.sig.symbol_name(dp.pairs[0].lhs.sym()) == "f#");
  CHECK(dp.sig.symbol_name(dp.pairs[0].rhs.sym()) == "g#");
}

TEST_CASE("right-hand sides without defined subterms give no pairs") {
  Mtrs m = parse_problem("(VAR x y)(RULES f(x, y) -> c(x, y))").system;
  CHECK(dependency_pairs(m).pairs.empty());
}

TEST_CASE("initial problem with and without the formative start") {
  Mtrs m = running_system();

  DPProblem plain = initial_problem(m, false);
  CHECK(plain.pairs.size() == 10);
  CHECK(ids_of(plain.rules) ==
        std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
  CHECK(plain.f1 == MinFlag::Minimal);
  CHECK(plain.f2 == StratFlag::Arbitrary);

  DPProblem trimmed = initial_problem(m, true);
  CHECK(trimmed.pairs.size() == 10);
  // rules 4 and 9 produce Err and Return, which no pair pattern needs
  CHECK(ids_of(trimmed.rules) ==
        std::vector<int>{1, 2, 3, 5, 6, 7, 8, 10, 11});
  CHECK(trimmed.f1 == MinFlag::Minimal);
  CHECK(trimmed.f2 == StratFlag::Formative);

  Mtrs inner = m;
  inner.innermost_only = true;
  DPProblem in_problem = initial_problem(inner, false);
  CHECK(in_problem.f2 == StratFlag::Innermost);
  CHECK_THROWS_AS((void)initial_problem(inner, true), PreconditionError);
}

TEST_CASE("estimated dependency graph of the list/number system") {
  Mtrs m = running_system();
  DPProblem p = initial_problem(m, false);
  DependencyGraph g = estimated_dependency_graph(p);

  auto index_of = [&](int pair_id) {
    for (std::size_t i = 0; i < p.pairs.size(); ++i)
      if (p.pairs[i].id == pair_id) return static_cast<int>(i);
    FAIL("missing pair");
    return -1;
  };

  // Rnd# loops on itself and nothing else reaches back into it
  int rnd_loop = index_of(12);
  CHECK(g.has_edge(rnd_loop, rnd_loop));

  // Big# -> Big# via pair 13; Big# -> Ack# (14) and Ack# -> Ack# (19)
  CHECK(g.has_edge(index_of(13), index_of(13)));
  CHECK(g.has_edge(index_of(13), index_of(14)));
  CHECK(g.has_edge(index_of(19), index_of(19)));
  // Ack# never reaches Big#
  CHECK_FALSE(g.has_edge(index_of(19), index_of(13)));
  // Upd# -> Rnd# (16 feeds the Rnd# loop)
  CHECK(g.has_edge(index_of(16), index_of(12)));

  auto sccs = nontrivial_sccs(g);
  std::vector<std::vector<int>> got;
  for (const auto& comp : sccs) {
    std::vector<int> ids;
    for (int i : comp) ids.push_back(p.pairs[i].id);
    got.push_back(ids);
  }
  CHECK(got == std::vector<std::vector<int>>{{12}, {13}, {17}, {19, 20, 21}});
}

TEST_CASE("graph estimation caps rewritable arguments") {
  // f#(a) -> f#(g(a)): g(a) may rewrite to a, so the estimation must keep
  // the self edge even though g(a) does not match the pattern a directly.
  Mtrs m = parse_problem("(VAR x)(RULES f(a) -> f(g(a)) g(x) -> x)").system;
  DPProblem p = initial_problem(m, false);

  int f_loop = -1;
  for (std::size_t i = 0; i < p.pairs.size(); ++i)
    if (p.pairs[i].rhs.is_app() &&
        p.sig.symbol_name(p.pairs[i].rhs.sym()) == "f#")
      f_loop = static_cast<int>(i);
  REQUIRE(f_loop >= 0);

  DependencyGraph g = estimated_dependency_graph(p);
  CHECK(g.has_edge(f_loop, f_loop));
  auto sccs = nontrivial_sccs(g);
  REQUIRE(sccs.size() == 1);
  CHECK(sccs[0] == std::vector<int>{f_loop});
}

TEST_CASE("graph estimation separates constructor-distinct pairs") {
  // f#(a) -> f#(b) with constructors a, b: b never becomes a, so no edge
  Mtrs m = parse_problem("(VAR x)(RULES f(a) -> f(b))").system;
  DPProblem p = initial_problem(m, false);
  REQUIRE(p.pairs.size() == 1);
  DependencyGraph g = estimated_dependency_graph(p);
  CHECK_FALSE(g.has_edge(0, 0));
  CHECK(nontrivial_sccs(g).empty());
}
