#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "formadp/rule.hpp"

namespace formadp {

/// One rewrite step: rule `rule_id` applied at `pos` with matcher `subst`.
struct Step {
  Position pos;
  int rule_id = 0;
  Subst subst;

  bool operator==(const Step&) const = default;
};

/// A reduction s0 -> s1 -> ... -> sn; replay recomputes and validates the
/// intermediate terms from the recorded steps.
struct ReductionTrace {
  Term start;
  std::vector<Step> steps;

  std::size_t length() const { return steps.size(); }

  /// All n+1 terms of the reduction. Throws PreconditionError if a recorded
  /// step does not apply.
  std::vector<Term> replay(const std::vector<Rule>& rules) const;
  Term end(const std::vector<Rule>& rules) const;

  bool operator==(const ReductionTrace&) const = default;
};

const Rule& rule_by_id_or_throw(const std::vector<Rule>& rules, int id);

/// Applies one step to t; throws PreconditionError if it does not apply.
Term apply_step(const Term& t, const Step& step,
                const std::vector<Rule>& rules);

/// All one-step successors of t, ordered by (position pre-order, rule order).
/// Rules must satisfy the variable condition.
std::vector<std::pair<Term, Step>> reducts(const Term& t,
                                           const std::vector<Rule>& rules);

/// One-step successors where the contracted redex has all proper subterms in
/// normal form.
std::vector<std::pair<Term, Step>> innermost_reducts(
    const Term& t, const std::vector<Rule>& rules);

bool is_normal_form(const Term& t, const std::vector<Rule>& rules);

struct BoundedOpts {
  std::size_t max_steps = 6;
  std::size_t max_distinct_terms = 10000;
  std::size_t max_traces = 50000;
};

/// All reduction traces from s of length <= max_steps (prefixes included;
/// the empty trace is always present). `truncated` is set when a resource
/// cap cut the enumeration short.
struct BoundedResult {
  std::vector<ReductionTrace> traces;
  bool truncated = false;
  std::size_t distinct_terms = 0;
};

BoundedResult bounded_reductions(const Term& s, const std::vector<Rule>& rules,
                                 const BoundedOpts& opts);

/// True iff `to` is reachable from `from` within the step bound.
bool reachable_within(const Term& from, const Term& to,
                      const std::vector<Rule>& rules, const BoundedOpts& opts);

}  // namespace formadp
