#pragma once

#include <string>
#include <vector>

#include "formadp/filtering.hpp"
#include "formadp/rule.hpp"

namespace formadp {

struct SaturationStep {
  int rule_id = 0;
  std::string reason;
};

/// A subset of a rule set, remembered by id, plus the order and reason each
/// rule entered during saturation.
struct RuleSetResult {
  std::vector<int> ids;  // ascending
  std::vector<SaturationStep> trace;

  bool contains(int id) const;
  std::vector<Rule> select(const std::vector<Rule>& rules) const;
};

struct FilterOpts {
  /// Restrict argument recursion to regarded positions.
  const ArgumentFiltering* pi = nullptr;
  /// Replace the syntactic inclusion test by the capped-unification test.
  bool tcap = false;
};

/// Usable rules of a term: rules reachable by root symbols of (regarded)
/// subterms of t, closed under right-hand sides. With opts.tcap the
/// inclusion test is unification of f(cap(t1),...,cap(tn)) with the rule's
/// left-hand side.
RuleSetResult usable_rules(const Term& t, const std::vector<Rule>& rules,
                           const Signature& sig, const FilterOpts& opts = {});

/// Union over the right-hand sides of the given pairs.
RuleSetResult usable_rules(const std::vector<Rule>& pairs,
                           const std::vector<Rule>& rules,
                           const Signature& sig, const FilterOpts& opts = {});

/// Formative rules of a term: rules whose right-hand side can contribute the
/// pattern t from below, closed under left-hand sides; a non-linear scanned
/// term yields the whole rule set. With opts.tcap the shape test becomes:
/// collapsing rules of the scanned sort, plus rules whose capped right-hand
/// side unifies with the scanned subterm.
RuleSetResult formative_rules(const Term& t, const std::vector<Rule>& rules,
                              const Signature& sig,
                              const FilterOpts& opts = {});

/// Union over the left-hand sides of the given pairs.
RuleSetResult formative_rules(const std::vector<Rule>& pairs,
                              const std::vector<Rule>& rules,
                              const Signature& sig,
                              const FilterOpts& opts = {});

/// Split-formative rules over a combined system A: every collapsing rule of
/// A is included outright; non-collapsing rules are included by root form
/// (or capped unification with opts.tcap) and closed under left-hand sides.
RuleSetResult split_formative_rules(const Term& t, const std::vector<Rule>& A,
                                    const Signature& sig,
                                    const FilterOpts& opts = {});

RuleSetResult split_formative_rules(const std::vector<Rule>& pairs,
                                    const std::vector<Rule>& A,
                                    const Signature& sig,
                                    const FilterOpts& opts = {});

/// The paired projection rules c_s(x,y) -> x | y for every non-dpsort sort,
/// extending the signature with the fresh unfilterable symbols. Ids are
/// first_id, first_id+1, ...
std::vector<Rule> ce_rules(Signature& sig, int first_id);

/// Combined system A_R over a single-sorted rule set: projection rules that
/// the saturation demands (Cl) plus non-collapsing consequences (NC).
struct CombinedSystem {
  std::vector<Rule> cl;
  std::vector<Rule> nc;
  std::vector<SaturationStep> trace;

  std::vector<Rule> all() const;
};

/// Requires a uniform (single-sorted) signature for the symbols occurring in
/// the rules; use collapse_sorts first. Derived rules get fresh ids starting
/// at max(first_derived_id, largest input id + 1).
CombinedSystem combine_rules(const std::vector<Rule>& rules,
                             const Signature& sig, int first_derived_id = 0);

}  // namespace formadp
