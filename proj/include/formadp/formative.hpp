#pragma once

#include <map>
#include <optional>

#include "formadp/rewrite.hpp"
#include "formadp/rule_filters.hpp"

namespace formadp {

/// Decides whether `trace`, which must end at pattern*gamma, is a formative
/// pattern-reduction: a non-linear pattern accepts anything; a variable
/// pattern accepts only the empty reduction (all work is postponed); an
/// application pattern f(l1,...,ln) splits at the last root step, whose
/// prefix must be formative for the applied rule's left-hand side and whose
/// suffix decomposes argument-wise against the li. Throws PreconditionError
/// when the trace does not end at pattern*gamma.
bool is_formative_reduction(const ReductionTrace& trace, const Term& pattern,
                            const Subst& gamma, const std::vector<Rule>& rules);

/// A successful formative search: start ->* pattern*delta by the returned
/// trace, with delta(x) ->* gamma(x) for the witnessing gamma.
struct FormativeWitness {
  Subst delta;
  ReductionTrace trace;
  Subst gamma;                              // from the witnessing reduction
  std::map<Var, ReductionTrace> postponed;  // delta(x) ->* gamma(x)
};

/// Transforms a witnessing reduction start ->* pattern*gamma into a
/// formative pattern-reduction start ->* pattern*delta by postponing the
/// steps that happen strictly below variable positions of the pattern.
/// Requires a linear-or-accepted pattern situation as in
/// is_formative_reduction; the result is re-checked internally.
FormativeWitness make_formative(const ReductionTrace& witness,
                                const Term& pattern, const Subst& gamma,
                                const std::vector<Rule>& rules);

/// Bounded search: finds some reduction start ->* pattern*gamma within
/// max_steps, then produces the postponed formative variant and verifies
/// that it only uses rules from the formative approximation of the pattern
/// (syntactic by default, capped-unification with opts.tcap).
std::optional<FormativeWitness> find_formative(const Term& start,
                                               const Term& pattern,
                                               const std::vector<Rule>& rules,
                                               const Signature& sig,
                                               const BoundedOpts& opts = {},
                                               const FilterOpts& fr_opts = {});

}  // namespace formadp
