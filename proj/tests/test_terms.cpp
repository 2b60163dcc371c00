#include "doctest.h"

#include <set>

#include "formadp/term.hpp"
#include "formadp/unify.hpp"

#include "helpers.hpp"

using namespace formadp;
using namespace formadp::testing;

namespace {

Signature nat_sig() {
  Signature sig;
  SortId nat = sig.intern_sort("NAT");
  SortId list = sig.intern_sort("LIST");
  sig.add_symbol("O", {{}, nat});
  sig.add_symbol("S", {{nat}, nat});
  sig.add_symbol("Nil", {{}, list});
  sig.add_symbol("Cons", {{nat, list}, list});
  sig.add_symbol("Ack", {{nat, nat}, nat});
  return sig;
}

}  // namespace

TEST_CASE("term construction and accessors") {
  Signature sig = nat_sig();
  Term x = mkvar(sig, "x", "NAT");
  CHECK(x.is_var());
  CHECK_FALSE(x.is_app());
  CHECK(x.var_name() == "x");
  CHECK(x.sort() == *sig.find_sort("NAT"));

  Term t = mk(sig, "Cons", {mk(sig, "O"), mk(sig, "Nil")});
  CHECK(t.is_app());
  CHECK(t.arity() == 2);
  CHECK(t.sort() == *sig.find_sort("LIST"));
  CHECK(t.size() == 3);
  CHECK(t.to_string(sig) == "Cons(O,Nil)");

  Term empty;
  CHECK(empty.empty());
  CHECK_THROWS_AS((void)empty.sym(), Error);
}

TEST_CASE("sort_of validates argument sorts") {
  Signature sig = nat_sig();
  Term good = mk(sig, "S", {mk(sig, "O")});
  CHECK(sort_of(good, sig) == *sig.find_sort("NAT"));

  // Cons(Nil, Nil) puts a LIST where a NAT belongs
  Term bad = mk(sig, "Cons", {mk(sig, "Nil"), mk(sig, "Nil")});
  CHECK_THROWS_AS((void)sort_of(bad, sig), SortError);

  Term bad_var = mk(sig, "S", {mkvar(sig, "l", "LIST")});
  CHECK_THROWS_AS((void)sort_of(bad_var, sig), SortError);
}

TEST_CASE("positions, subterms and replacement") {
  Signature sig = nat_sig();
  Term x = mkvar(sig, "x", "NAT");
  Term t = mk(sig, "Cons", {mk(sig, "S", {x}), mk(sig, "Nil")});

  auto pos = t.positions();
  REQUIRE(pos.size() == 4);  // root, S(x), x, Nil
  CHECK(pos[0] == Position{});
  CHECK(pos[1] == Position{0});
  CHECK(pos[2] == Position{0, 0});
  CHECK(pos[3] == Position{1});
  CHECK(t.subterm_at({0, 0}) == x);

  Term replaced = t.replace_at({0}, mk(sig, "O"));
  CHECK(replaced.to_string(sig) == "Cons(O,Nil)");
  CHECK(t.to_string(sig) == "Cons(S(x),Nil)");  // original untouched
  CHECK_THROWS_AS((void)t.subterm_at({5}), Error);
}

TEST_CASE("variable collection order and linearity") {
  Signature sig = nat_sig();
  Term x = mkvar(sig, "x", "NAT");
  Term y = mkvar(sig, "y", "LIST");
  Term t = mk(sig, "Cons", {x, mk(sig, "Cons", {x, y})});

  auto vars = t.vars();
  REQUIRE(vars.size() == 2);  // first-occurrence order, no duplicates
  CHECK(vars[0].name == "x");
  CHECK(vars[1].name == "y");
  CHECK_FALSE(is_linear(t));
  CHECK(is_linear(mk(sig, "Cons", {x, y})));
  CHECK(is_linear(x));
}

TEST_CASE("substitution application is sort checked") {
  Signature sig = nat_sig();
  Var x{"x", *sig.find_sort("NAT")};
  Subst sigma;
  sigma.bind(x, mk(sig, "O"));
  CHECK(apply_subst(mk(sig, "S", {Term::var(x)}), sigma, sig).to_string(sig) ==
        "S(O)");

  Subst bad;
  CHECK_THROWS_AS(bad.bind(x, mk(sig, "Nil")), SortError);
}

TEST_CASE("matching finds the witnessing substitution") {
  Signature sig = nat_sig();
  Term x = mkvar(sig, "x", "NAT");
  Term y = mkvar(sig, "y", "LIST");
  Term pattern = mk(sig, "Cons", {x, y});
  Term subject =
      mk(sig, "Cons", {mk(sig, "S", {mk(sig, "O")}), mk(sig, "Nil")});

  auto gamma = match(pattern, subject);
  REQUIRE(gamma.has_value());
  CHECK(apply_subst(pattern, *gamma, sig) == subject);

  CHECK_FALSE(match(mk(sig, "S", {x}), subject).has_value());

  // non-linear pattern needs equal instances
  Term nl = mk(sig, "Ack", {x, x});
  CHECK(match(nl, mk(sig, "Ack", {mk(sig, "O"), mk(sig, "O")})).has_value());
  CHECK_FALSE(match(nl, mk(sig, "Ack", {mk(sig, "O"),
                                        mk(sig, "S", {mk(sig, "O")})}))
                  .has_value());
}

TEST_CASE("unification with occurs check and sorts") {
  Signature sig = nat_sig();
  Term x = mkvar(sig, "x", "NAT");
  Term y = mkvar(sig, "y", "NAT");

  auto mgu = unify(mk(sig, "Ack", {x, mk(sig, "O")}),
                   mk(sig, "Ack", {mk(sig, "S", {y}), y}));
  REQUIRE(mgu.has_value());
  CHECK(mgu->apply(mk(sig, "Ack", {x, mk(sig, "O")})) ==
        mgu->apply(mk(sig, "Ack", {mk(sig, "S", {y}), y})));

  // occurs check: x with S(x)
  CHECK_FALSE(unify(x, mk(sig, "S", {x})).has_value());
  // sort clash: NAT variable against LIST term
  CHECK_FALSE(unify(x, mk(sig, "Nil")).has_value());
  // different roots
  CHECK_FALSE(unify(mk(sig, "O"), mk(sig, "Nil")).has_value());
}

TEST_CASE("renamed-apart unification") {
  Signature sig = nat_sig();
  Term x = mkvar(sig, "x", "NAT");
  // x and S(x) unify once the second x is renamed apart
  CHECK(unifies_renamed_apart(x, mk(sig, "S", {x})));
}

TEST_CASE("equality modulo renaming is bijective and sort respecting") {
  Signature sig = nat_sig();
  Term x = mkvar(sig, "x", "NAT");
  Term y = mkvar(sig, "y", "NAT");
  Term l = mkvar(sig, "l", "LIST");

  CHECK(equal_mod_renaming(mk(sig, "Ack", {x, y}), mk(sig, "Ack", {y, x})));
  // non-injective map x,y -> z,z is not a renaming
  CHECK_FALSE(equal_mod_renaming(mk(sig, "Ack", {x, y}),
                                 mk(sig, "Ack", {x, x})));
  CHECK_FALSE(equal_mod_renaming(mk(sig, "Ack", {x, x}),
                                 mk(sig, "Ack", {x, y})));
  // sorts must match up
  CHECK_FALSE(equal_mod_renaming(x, l));
  CHECK(equal_mod_renaming(x, y));
}

TEST_CASE("tcap abstracts rewritable subterms") {
  Mtrs m = running_system();
  const Signature& sig = m.sig;
  Term x = mkvar(sig, "x", "NAT");

  // Rnd(x) is rewritable, so the whole term is capped to a fresh variable
  Term capped = tcap(mk(sig, "Rnd", {x}), m.rules, sig);
  CHECK(capped.is_var());

  // S(O) is a constructor term: no rule left-hand side unifies
  Term s_o = mk(sig, "S", {mk(sig, "O")});
  CHECK(tcap(s_o, m.rules, sig) == s_o);

  // Cons(Rnd(O), Nil): the Rnd argument is capped, Cons survives
  Term t = mk(sig, "Cons", {mk(sig, "Rnd", {mk(sig, "O")}), mk(sig, "Nil")});
  Term ct = tcap(t, m.rules, sig);
  REQUIRE(ct.is_app());
  CHECK(sig.symbol_name(ct.sym()) == "Cons");
  CHECK(ct.args()[0].is_var());
  CHECK(ct.args()[1] == mk(sig, "Nil"));

  // Ack(O, y) unifies with the lhs of rule 5, so it is capped entirely
  CHECK(tcap(mk(sig, "Ack", {mk(sig, "O"), x}), m.rules, sig).is_var());
}

TEST_CASE("fresh variable source avoids taken names") {
  FreshGen gen(std::set<std::string>{"_1", "_3"});
  Var a = gen.next(0);
  Var b = gen.next(0);
  Var c = gen.next(0);
  CHECK(a.name == "_2");
  CHECK(b.name == "_4");
  CHECK(c.name == "_5");

  Signature sig = nat_sig();
  FreshGen gen2;
  gen2.reserve_names_of(mkvar(sig, "_1", "NAT"));
  CHECK(gen2.next(0).name == "_2");
}

TEST_CASE("structural order and hashing agree with equality") {
  Signature sig = nat_sig();
  Term a = mk(sig, "O");
  Term b = mk(sig, "S", {a});
  Term a2 = mk(sig, "O");

  CHECK(a == a2);
  CHECK(a.hash() == a2.hash());
  CHECK(a != b);
  CHECK(((a < b) || (b < a)));
  std::set<Term> all = {a, b, a2};
  CHECK(all.size() == 2);
}

TEST_CASE("rename_vars is consistent within a term") {
  Signature sig = nat_sig();
  Term x = mkvar(sig, "x", "NAT");
  Term t = mk(sig, "Ack", {x, x});
  FreshGen gen;
  Term renamed = rename_vars(t, gen);
  CHECK(equal_mod_renaming(t, renamed));
  CHECK(renamed.args()[0] == renamed.args()[1]);
  CHECK(renamed.args()[0].var_name() != "x");
}
