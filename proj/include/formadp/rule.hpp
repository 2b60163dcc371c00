#pragma once

#include <optional>
#include <string>
#include <vector>

#include "formadp/term.hpp"

namespace formadp {

struct Provenance {
  enum class Kind { User, DependencyPair, Derived };
  Kind kind = Kind::User;
  /// Ids of the rules this one was derived from (empty for user rules).
  std::vector<int> from;
  /// Free-form note, e.g. which saturation clause produced the rule.
  std::string how;
};

/// A rewrite rule lhs -> rhs with a stable id. User rules additionally
/// satisfy Var(rhs) subset-of Var(lhs); derived rule sets may not.
struct Rule {
  int id = 0;
  Term lhs;
  Term rhs;
  Provenance prov;

  bool collapsing() const { return rhs.is_var(); }
};

/// Validates one rule: lhs is not a variable, both sides share a sort, and
/// (if required) Var(rhs) is a subset of Var(lhs). Throws on violation.
void validate_rule(const Rule& r, const Signature& sig,
                   bool require_var_condition);

bool rule_equal_mod_renaming(const Rule& a, const Rule& b);

/// Variable condition Var(rhs) subset-of Var(lhs).
bool satisfies_var_condition(const Rule& r);

/// A many-sorted term rewrite system: a signature and numbered rules.
struct Mtrs {
  Signature sig;
  std::vector<Rule> rules;
  bool innermost_only = false;  // strategy annotation from the input file

  const Rule* rule_by_id(int id) const;
  std::vector<SymbolId> defined_symbols() const;
  bool is_defined(SymbolId f) const;
  int max_rule_id() const;
};

/// Symbol-preserving translation into a single-sorted signature (all sorts
/// collapsed to "o"). Symbol ids are preserved; dpsort collapses as well.
Mtrs collapse_sorts(const Mtrs& m);

/// Rebuilds a term from `from` inside `to`; symbol ids must line up (as they
/// do for signatures produced by collapse_sorts).
Term translate_term(const Term& t, const Signature& to);

}  // namespace formadp
