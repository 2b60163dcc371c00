#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "formadp/signature.hpp"

namespace formadp {

struct Var {
  std::string name;
  SortId sort = kNoSort;

  auto operator<=>(const Var&) const = default;
};

/// A path of child indices (0-based); the empty path is the root.
using Position = std::vector<int>;

std::string position_to_string(const Position& pos);

/// Immutable first-order term. Application nodes cache the result sort of
/// their root symbol; full well-sortedness is established once by sort_of.
class Term {
 public:
  Term() = default;  // empty handle; any accessor throws

  static Term var(std::string name, SortId sort);
  static Term var(const Var& v) { return var(v.name, v.sort); }
  static Term app(const Signature& sig, SymbolId f, std::vector<Term> args);

  bool empty() const { return node_ == nullptr; }
  bool is_var() const;
  bool is_app() const;

  const std::string& var_name() const;
  SortId var_sort() const;
  Var as_var() const { return Var{var_name(), var_sort()}; }

  SymbolId sym() const;
  const std::vector<Term>& args() const;
  int arity() const { return static_cast<int>(args().size()); }

  /// Cached sort: the variable's sort, or the root symbol's result sort.
  SortId sort() const;

  std::size_t hash() const;
  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

  /// Total order (structural); used to keep containers deterministic.
  std::strong_ordering operator<=>(const Term& other) const;
  bool operator<(const Term& o) const { return (*this <=> o) < 0; }

  int size() const;  // number of nodes

  const Term& subterm_at(const Position& pos) const;
  Term replace_at(const Position& pos, const Term& replacement) const;

  /// Same root symbol, new arguments (must preserve the arity).
  Term with_args(std::vector<Term> new_args) const;

  /// All positions in pre-order (root first).
  std::vector<Position> positions() const;

  /// Variables in order of first occurrence (left to right).
  std::vector<Var> vars() const;
  std::set<Var> var_set() const;

  std::string to_string(const Signature& sig) const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& node() const;
};

/// Finite sort-preserving map from variables to terms, applied simultaneously.
class Subst {
 public:
  Subst() = default;

  /// Binds v to t. Throws SortError if the sorts disagree.
  void bind(const Var& v, const Term& t);
  bool binds(const Var& v) const { return map_.count(v) != 0; }
  const Term* lookup(const Var& v) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  Term apply(const Term& t) const;

  const std::map<Var, Term>& entries() const { return map_; }

  /// Restriction to the given variables.
  Subst restrict_to(const std::set<Var>& vars) const;

  /// Union of disjoint substitutions; throws on conflicting bindings.
  static Subst disjoint_union(const Subst& a, const Subst& b);

  bool operator==(const Subst&) const = default;

  std::string to_string(const Signature& sig) const;

 private:
  std::map<Var, Term> map_;
};

/// Fresh-variable source: names `_1`, `_2`, ... skipping any name in `taken`.
class FreshGen {
 public:
  FreshGen() = default;
  explicit FreshGen(std::set<std::string> taken) : taken_(std::move(taken)) {}

  Var next(SortId sort);
  void reserve_names_of(const Term& t);

 private:
  std::set<std::string> taken_;
  int counter_ = 0;
};

// --- core operations ---

/// Checks well-sortedness and returns the sort. Throws SortError naming the
/// offending position on the first argument/declaration mismatch.
SortId sort_of(const Term& t, const Signature& sig);

bool is_linear(const Term& t);

/// Applies sigma to t after verifying every binding is sort-preserving.
Term apply_subst(const Term& t, const Subst& sigma, const Signature& sig);

/// Syntactic matching: a substitution gamma with pattern * gamma == subject.
std::optional<Subst> match(const Term& pattern, const Term& subject);

/// Shape test: t has root f, or t is a variable whose sort is f's result.
bool has_shape(const Term& t, SymbolId f, const Signature& sig);

/// Structural equality up to a bijective, sort-respecting variable renaming.
bool equal_mod_renaming(const Term& a, const Term& b);

/// Renames every variable of t to a fresh one from gen; consistent within t.
Term rename_vars(const Term& t, FreshGen& gen);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

}  // namespace formadp
