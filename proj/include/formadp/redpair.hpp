#pragma once

#include <functional>
#include <optional>
#include <string>

#include "formadp/filtering.hpp"
#include "formadp/poly.hpp"

namespace formadp {

struct RedPairConfig {
  int coef_bound = 3;
  /// Default per-symbol filtering space is {all} + singletons + {}; this
  /// widens it to the full powerset for symbols of arity <= 3.
  bool powerset_small_arity = false;
  long max_filterings = 512;
  /// Global cap on coefficient assignments across the whole search.
  long max_assignments = 4000000;
};

struct RedPairStats {
  long filterings_tried = 0;
  long filterings_refused = 0;  // constraint builder declined the filtering
  long assignments_tried = 0;
  bool budget_exhausted = false;
};

/// Requirements for one candidate filtering, already filtered. pair_cs are
/// the pair orientations (the search decides which become strict); rule_cs
/// must hold weakly.
struct ConstraintSet {
  std::vector<OrientationConstraint> pair_cs;
  std::vector<OrientationConstraint> rule_cs;
};

/// Produces the constraint set for a candidate filtering, or absent to
/// refuse it (e.g. a side condition fails under this filtering).
using ConstraintBuilder =
    std::function<std::optional<ConstraintSet>(const AppliedFiltering&)>;

struct RedPairModel {
  ArgumentFiltering pi;
  Signature filtered_sig;
  Interpretation interp;          // keyed by filtered-signature symbols
  std::vector<int> strict_ids;    // pair constraints oriented strictly
  ConstraintSet constraints;      // the set the model satisfies
};

/// Backtracking search over argument filterings (trivial first, then by
/// deviation count) and per-symbol coefficient vectors in [0, coef_bound].
/// Returns the first model that weakly orients everything and strictly
/// orients at least one pair constraint (any model if pair_cs is empty).
/// Deterministic for a fixed input.
std::optional<RedPairModel> search_reduction_pair(
    const Signature& sig, const std::vector<SymbolId>& filterable,
    const ConstraintBuilder& build, const RedPairConfig& cfg,
    RedPairStats* stats = nullptr);

}  // namespace formadp
