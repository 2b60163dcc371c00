#pragma once

#include <map>
#include <vector>

#include "formadp/term.hpp"

namespace formadp {

/// Linear polynomial for one symbol: one natural coefficient per argument
/// plus a constant. Interpretations over naturals are weakly monotone by
/// construction.
struct LinearPoly {
  std::vector<long> coeffs;
  long constant = 0;

  bool operator==(const LinearPoly&) const = default;
};

/// Per-symbol interpretation; every symbol occurring in a compared term must
/// have an entry.
struct Interpretation {
  std::map<SymbolId, LinearPoly> polys;

  const LinearPoly& at(SymbolId f, const Signature& sig) const;
};

/// A term denotes a linear form over its variables.
struct LinearForm {
  std::map<Var, long> coeffs;
  long constant = 0;
};

LinearForm linear_form(const Term& t, const Interpretation& interp,
                       const Signature& sig);

long eval_poly(const Term& t, const Interpretation& interp,
               const Signature& sig, const std::map<Var, long>& assignment);

/// One side of a reduction-pair requirement; both terms are already
/// filtered.
struct OrientationConstraint {
  Term lhs;
  Term rhs;
  bool strict = false;
  int id = 0;  // owning rule or pair, for diagnostics
};

/// Coefficient-wise sufficient criterion over naturals: the difference
/// lhs - rhs must have no negative coefficient and a non-negative constant;
/// strict additionally demands constant >= 1.
bool compare(const OrientationConstraint& c, const Interpretation& interp,
             const Signature& sig);
bool compare_weak(const Term& lhs, const Term& rhs,
                  const Interpretation& interp, const Signature& sig);
bool compare_strict(const Term& lhs, const Term& rhs,
                    const Interpretation& interp, const Signature& sig);

}  // namespace formadp
