#pragma once

#include <map>
#include <optional>
#include <vector>

#include "formadp/rule.hpp"

namespace formadp {

/// Argument filtering pi: per symbol, the regarded argument indices
/// (1-based, strictly increasing). Symbols without an entry keep all
/// arguments. Paired-projection symbols c_s must keep both arguments, so
/// set() rejects them when non-trivial.
class ArgumentFiltering {
 public:
  ArgumentFiltering() = default;

  void set(const Signature& sig, SymbolId f, std::vector<int> regarded);

  /// Regarded indices of f (1-based), defaulting to all of 1..arity.
  std::vector<int> regarded(const Signature& sig, SymbolId f) const;

  bool trivial_for(const Signature& sig, SymbolId f) const;
  bool trivial() const { return entries_.empty(); }

  const std::map<SymbolId, std::vector<int>>& entries() const {
    return entries_;
  }

  bool operator==(const ArgumentFiltering&) const = default;

  std::string to_string(const Signature& sig) const;

 private:
  std::map<SymbolId, std::vector<int>> entries_;
};

/// The filtering applied to a concrete signature: materializes the filtered
/// symbols f_pi (named f@i1i2...) in an extended copy of the signature and
/// converts terms, rules, substitutions and positions.
class AppliedFiltering {
 public:
  AppliedFiltering(const Signature& sig, const ArgumentFiltering& pi);

  const Signature& filtered_signature() const { return filtered_; }
  const ArgumentFiltering& pi() const { return pi_; }

  /// pi-bar of a term: unregarded arguments are dropped, filtered symbols
  /// replace the originals. Variables pass through.
  Term filter(const Term& t) const;
  Rule filter(const Rule& r) const;
  Subst filter(const Subst& s) const;

  /// Image of a position under filtering; absent when the position sits
  /// inside a dropped argument.
  std::optional<Position> filter_position(const Term& t,
                                          const Position& pos) const;

  /// Filtered counterpart of f (f itself when trivially filtered).
  SymbolId filtered_symbol(SymbolId f) const;

 private:
  Signature filtered_;
  ArgumentFiltering pi_;
  std::map<SymbolId, SymbolId> renamed_;
};

}  // namespace formadp
