#include "formadp/poly.hpp"

namespace formadp {

const LinearPoly& Interpretation::at(SymbolId f, const Signature& sig) const {
  auto it = polys.find(f);
  if (it == polys.end())
    throw Error("no interpretation for symbol '" + sig.symbol_name(f) + "'");
  if (static_cast<int>(it->second.coeffs.size()) != sig.arity(f))
    throw Error("interpretation arity mismatch for '" + sig.symbol_name(f) +
                "'");
  return it->second;
}

LinearForm linear_form(const Term& t, const Interpretation& interp,
                       const Signature& sig) {
  LinearForm out;
  if (t.is_var()) {
    out.coeffs[t.as_var()] = 1;
    return out;
  }
  const LinearPoly& p = interp.at(t.sym(), sig);
  out.constant = p.constant;
  for (int i = 0; i < t.arity(); ++i) {
    if (p.coeffs[i] == 0) continue;
    LinearForm sub = linear_form(t.args()[i], interp, sig);
    out.constant += p.coeffs[i] * sub.constant;
    for (const auto& [v, c] : sub.coeffs) out.coeffs[v] += p.coeffs[i] * c;
  }
  return out;
}

long eval_poly(const Term& t, const Interpretation& interp,
               const Signature& sig, const std::map<Var, long>& assignment) {
  LinearForm f = linear_form(t, interp, sig);
  long value = f.constant;
  for (const auto& [v, c] : f.coeffs) {
    auto it = assignment.find(v);
    if (it == assignment.end())
      throw Error("no assignment for variable '" + v.name + "'");
    value += c * it->second;
  }
  return value;
}

namespace {

bool dominates(const LinearForm& l, const LinearForm& r, long min_constant) {
  if (l.constant - r.constant < min_constant) return false;
  for (const auto& [v, c] : r.coeffs) {
    auto it = l.coeffs.find(v);
    long lc = it == l.coeffs.end() ? 0 : it->second;
    if (lc - c < 0) return false;
  }
  return true;
}

}  // namespace

bool compare_weak(const Term& lhs, const Term& rhs,
                  const Interpretation& interp, const Signature& sig) {
  return dominates(linear_form(lhs, interp, sig),
                   linear_form(rhs, interp, sig), 0);
}

bool compare_strict(const Term& lhs, const Term& rhs,
                    const Interpretation& interp, const Signature& sig) {
  return dominates(linear_form(lhs, interp, sig),
                   linear_form(rhs, interp, sig), 1);
}

bool compare(const OrientationConstraint& c, const Interpretation& interp,
             const Signature& sig) {
  return c.strict ? compare_strict(c.lhs, c.rhs, interp, sig)
                  : compare_weak(c.lhs, c.rhs, interp, sig);
}

}  // namespace formadp
