#pragma once

#include <optional>
#include <string>
#include <variant>

#include "formadp/dp.hpp"
#include "formadp/redpair.hpp"
#include "formadp/rule_filters.hpp"

namespace formadp {

/// Which rule set the reduction-pair processor requires weakly oriented.
/// All variants orient the filtered pairs; U below is R when minimality is
/// absent, the usable rules plus the paired projections when present, and
/// the plain usable rules under the innermost flag.
enum class RuleSetStrategy {
  AllR,                // every rule of R
  Usable,              // U itself
  FormativeUsable,     // formative rules of the filtered pairs over filtered U
  SplitFormative,      // split-formative rules over the combined system of U
  FilteredFormative,   // formative rules with the filtering folded in
  AproveIntersection,  // filtered-formative intersected with filtered-usable
};

const char* to_string(RuleSetStrategy s);
std::optional<RuleSetStrategy> strategy_from_name(const std::string& name);

struct TrimCertificate {
  std::vector<int> kept_rule_ids;
  std::vector<int> removed_rule_ids;
  bool downgraded_minimality = false;
  bool dropped_innermost = false;
};

struct GraphCertificate {
  std::vector<std::vector<int>> scc_pair_ids;
  std::vector<int> removed_pair_ids;
};

struct RedPairCertificate {
  RuleSetStrategy strategy;
  bool tcap = false;
  ArgumentFiltering pi;      // over the constraint signature
  Signature constraint_sig;  // filtered (and possibly sort-collapsed)
  Interpretation interp;
  std::vector<int> removed_pair_ids;
  ConstraintSet constraints;
  std::vector<std::string> notes;
};

using Certificate =
    std::variant<std::monostate, TrimCertificate, GraphCertificate,
                 RedPairCertificate>;

struct ProcOutcome {
  std::vector<DPProblem> children;
  bool progressed = false;
  Certificate cert;
  std::string note;  // diagnosis when the processor declined or failed
};

/// Replaces R by the formative rules of P. Keeps the minimality flag only
/// when the problem already carries the formative flag; under the innermost
/// flag both flags are reset.
ProcOutcome proc_formative_trim(const DPProblem& problem);

/// One child problem per nontrivial component of the estimated dependency
/// graph; flags are preserved.
ProcOutcome proc_dependency_graph(const DPProblem& problem);

struct RedPairProcConfig {
  RuleSetStrategy strategy = RuleSetStrategy::FormativeUsable;
  bool tcap = false;  // capped-unification refinements of UR/FR/SR
  RedPairConfig search;
};

/// Searches for an argument filtering and linear interpretation orienting
/// the pairs (>= 1 strictly) and the strategy's rule set weakly; removes the
/// strictly oriented pairs on success. The found model is replayed through
/// the comparison independently of the search before it is accepted.
ProcOutcome proc_reduction_pair(const DPProblem& problem,
                                const RedPairProcConfig& config);

}  // namespace formadp
