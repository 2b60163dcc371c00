#pragma once

#include <optional>

#include "formadp/rule.hpp"
#include "formadp/term.hpp"

namespace formadp {

/// Most general unifier of s and t (idempotent), or absent. Variables only
/// unify with terms of their own sort; the occurs check is performed.
std::optional<Subst> unify(const Term& s, const Term& t);

/// True iff s unifies with t after renaming t's variables apart from s's.
bool unifies_renamed_apart(const Term& s, const Term& t);

/// TCap: replaces every subterm that could be rewritten (after instantiating
/// variables) by a fresh variable. A subterm f(c1,...,cn) with capped
/// arguments ci survives only if it unifies with no left-hand side of rules
/// (taken renamed apart). Fresh variables are drawn from gen.
Term tcap(const Term& t, const std::vector<Rule>& rules, const Signature& sig,
          FreshGen& gen);

/// Convenience overload with a private fresh source seeded by t's names.
Term tcap(const Term& t, const std::vector<Rule>& rules, const Signature& sig);

}  // namespace formadp
