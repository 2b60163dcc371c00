#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace formadp {

using SortId = std::int32_t;
using SymbolId = std::int32_t;

inline constexpr SortId kNoSort = -1;
inline constexpr SymbolId kNoSymbol = -1;

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class SortError : public Error {
 public:
  explicit SortError(const std::string& what) : Error(what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

struct SortDecl {
  std::vector<SortId> args;
  SortId result = kNoSort;

  int arity() const { return static_cast<int>(args.size()); }
  bool operator==(const SortDecl&) const = default;
};

/// Many-sorted signature: interned sorts plus function symbols with sort
/// declarations. The sort `dpsort` is reserved (always interned, id 0) and
/// is the result sort of every marked symbol f#.
class Signature {
 public:
  static constexpr const char* kDpSortName = "dpsort";

  Signature();

  // --- sorts ---
  SortId intern_sort(const std::string& name);
  std::optional<SortId> find_sort(const std::string& name) const;
  const std::string& sort_name(SortId s) const;
  int sort_count() const { return static_cast<int>(sort_names_.size()); }
  SortId dpsort() const { return 0; }
  /// All sorts except dpsort, in interning order.
  std::vector<SortId> user_sorts() const;

  // --- symbols ---
  SymbolId add_symbol(const std::string& name, SortDecl decl);
  std::optional<SymbolId> find_symbol(const std::string& name) const;
  const std::string& symbol_name(SymbolId f) const;
  const SortDecl& decl(SymbolId f) const;
  int arity(SymbolId f) const { return decl(f).arity(); }
  SortId result_sort(SymbolId f) const { return decl(f).result; }
  int symbol_count() const { return static_cast<int>(symbols_.size()); }

  /// Marked symbol f# for a symbol f: same argument sorts, result dpsort.
  /// Created on first request.
  SymbolId mark(SymbolId f);
  std::optional<SymbolId> marked_of(SymbolId f) const;
  std::optional<SymbolId> unmarked_of(SymbolId fsharp) const;
  bool is_marked(SymbolId f) const;

  /// Fresh binary symbol c_<sort> : [s x s] => s used for the paired
  /// projection rules. Flagged so argument filterings leave it alone.
  SymbolId add_ce_symbol(SortId s);
  bool is_ce(SymbolId f) const;

  /// Copies the marked/projection flags from a signature with the same
  /// symbols (by id and name); used when rebuilding signatures, e.g. after
  /// collapsing sorts.
  void copy_symbol_flags(const Signature& from);

 private:
  struct SymbolInfo {
    std::string name;
    SortDecl decl;
    bool marked = false;     // this symbol is some f#
    bool ce = false;         // this symbol is some c_sort
    SymbolId marked_id = kNoSymbol;    // f -> f#
    SymbolId unmarked_id = kNoSymbol;  // f# -> f
  };

  std::vector<std::string> sort_names_;
  std::unordered_map<std::string, SortId> sort_index_;
  std::vector<SymbolInfo> symbols_;
  std::unordered_map<std::string, SymbolId> symbol_index_;

  const SymbolInfo& info(SymbolId f) const;
};

}  // namespace formadp
