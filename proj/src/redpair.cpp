#include "formadp/redpair.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace formadp {

namespace {

/// Candidate regarded sets for one symbol, the trivial one first.
std::vector<std::vector<int>> options_for(const Signature& sig, SymbolId f,
                                          bool powerset) {
  int n = sig.arity(f);
  std::vector<std::vector<int>> out;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  out.push_back(all);
  if (powerset && n <= 3) {
    // proper subsets, larger first, lexicographic within one size
    for (int size = n - 1; size >= 0; --size) {
      std::vector<bool> pick(n, false);
      std::fill(pick.begin(), pick.begin() + size, true);
      do {
        std::vector<int> subset;
        for (int i = 0; i < n; ++i)
          if (pick[i]) subset.push_back(i + 1);
        out.push_back(std::move(subset));
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  } else {
    for (int i = 1; i <= n; ++i) out.push_back({i});
    out.push_back({});
  }
  return out;
}

/// All candidate filterings, trivial first, then ordered by how many
/// symbols deviate from the trivial filtering. Capped at `limit`.
std::vector<ArgumentFiltering> enumerate_filterings(
    const Signature& sig, const std::vector<SymbolId>& filterable,
    bool powerset, long limit) {
  std::vector<SymbolId> symbols;
  std::vector<std::vector<std::vector<int>>> options;
  for (SymbolId f : filterable) {
    if (sig.arity(f) == 0 || sig.is_ce(f)) continue;
    symbols.push_back(f);
    options.push_back(options_for(sig, f, powerset));
  }

  std::vector<ArgumentFiltering> out;
  out.push_back(ArgumentFiltering{});
  int n = static_cast<int>(symbols.size());

  std::vector<int> combo;
  std::vector<int> choice;
  std::function<void(int)> emit_choices = [&](int idx) {
    if (static_cast<long>(out.size()) >= limit) return;
    if (idx == static_cast<int>(combo.size())) {
      ArgumentFiltering pi;
      for (std::size_t k = 0; k < combo.size(); ++k)
        pi.set(sig, symbols[combo[k]], options[combo[k]][choice[k]]);
      out.push_back(std::move(pi));
      return;
    }
    int opts = static_cast<int>(options[combo[idx]].size());
    for (int c = 1; c < opts; ++c) {
      choice.push_back(c);
      emit_choices(idx + 1);
      choice.pop_back();
      if (static_cast<long>(out.size()) >= limit) return;
    }
  };

  std::function<void(int, int)> combos = [&](int start, int need) {
    if (static_cast<long>(out.size()) >= limit) return;
    if (need == 0) {
      emit_choices(0);
      return;
    }
    for (int i = start; i + need <= n; ++i) {
      combo.push_back(i);
      combos(i + 1, need - 1);
      combo.pop_back();
      if (static_cast<long>(out.size()) >= limit) return;
    }
  };

  for (int k = 1; k <= n && static_cast<long>(out.size()) < limit; ++k)
    combos(0, k);
  return out;
}

void collect_symbols(const Term& t, std::vector<SymbolId>& order,
                     std::set<SymbolId>& seen) {
  if (t.is_var()) return;
  if (seen.insert(t.sym()).second) order.push_back(t.sym());
  for (const Term& a : t.args()) collect_symbols(a, order, seen);
}

/// Backtracking coefficient assignment for a fixed constraint set. Symbols
/// sharing a constraint form a component; components are solved separately
/// (their choices never interact), and within one component a symbol gets a
/// whole vector (coefficients then constant) at a time, with a constraint
/// checked as soon as its last symbol has a value.
class CoefficientSearch {
 public:
  CoefficientSearch(const Signature& sig,
                    const std::vector<OrientationConstraint>& constraints,
                    int bound, long max_assignments, RedPairStats& stats)
      : sig_(sig), constraints_(constraints), bound_(bound),
        max_assignments_(max_assignments), stats_(stats) {
    std::set<SymbolId> seen;
    for (const OrientationConstraint& c : constraints) {
      collect_symbols(c.lhs, symbols_, seen);
      collect_symbols(c.rhs, symbols_, seen);
    }

    // union symbols that appear in a common constraint
    std::map<SymbolId, std::size_t> index;
    for (std::size_t i = 0; i < symbols_.size(); ++i) index[symbols_[i]] = i;
    parent_.resize(symbols_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = i;
    constraint_syms_.resize(constraints.size());
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
      std::set<SymbolId> cs;
      std::vector<SymbolId> order;
      collect_symbols(constraints[ci].lhs, order, cs);
      collect_symbols(constraints[ci].rhs, order, cs);
      constraint_syms_[ci].assign(cs.begin(), cs.end());
      for (SymbolId f : cs)
        unite(index[*cs.begin()], index[f]);
    }

    std::map<std::size_t, std::size_t> comp_of_root;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      std::size_t root = find(i);
      auto it = comp_of_root.find(root);
      if (it == comp_of_root.end()) {
        it = comp_of_root.emplace(root, components_.size()).first;
        components_.push_back({});
      }
      components_[it->second].symbols.push_back(symbols_[i]);
    }
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
      if (constraint_syms_[ci].empty()) {
        ground_.push_back(static_cast<int>(ci));
        continue;
      }
      std::size_t root = find(index[constraint_syms_[ci][0]]);
      components_[comp_of_root[root]].constraints.push_back(
          static_cast<int>(ci));
    }
  }

  std::optional<Interpretation> run() {
    Interpretation interp;
    for (int ci : ground_)
      if (!compare(constraints_[ci], interp, sig_)) return std::nullopt;
    for (const Component& comp : components_) {
      build_groups(comp);
      if (!dfs(comp, 0, interp)) return std::nullopt;
    }
    return interp;
  }

 private:
  struct Component {
    std::vector<SymbolId> symbols;
    std::vector<int> constraints;
  };

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  void build_groups(const Component& comp) {
    std::map<SymbolId, int> level;
    for (std::size_t i = 0; i < comp.symbols.size(); ++i)
      level[comp.symbols[i]] = static_cast<int>(i);
    groups_.assign(comp.symbols.size() + 1, {});
    for (int ci : comp.constraints) {
      int last = -1;
      for (SymbolId f : constraint_syms_[ci])
        last = std::max(last, level[f]);
      groups_[last + 1].push_back(ci);
    }
  }

  bool dfs(const Component& comp, std::size_t depth, Interpretation& interp) {
    if (depth == comp.symbols.size()) return true;
    SymbolId f = comp.symbols[depth];
    int slots = sig_.arity(f) + 1;
    std::vector<long> vec(slots, 0);  // coefficients then constant
    while (true) {
      if (stats_.assignments_tried >= max_assignments_) {
        stats_.budget_exhausted = true;
        break;
      }
      ++stats_.assignments_tried;
      LinearPoly p;
      p.coeffs.assign(vec.begin(), vec.end() - 1);
      p.constant = vec.back();
      interp.polys[f] = std::move(p);
      if (check_group(depth + 1, interp) && dfs(comp, depth + 1, interp))
        return true;
      if (stats_.budget_exhausted) break;
      // next vector; the last slot varies fastest
      int k = slots - 1;
      while (k >= 0 && vec[k] == bound_) vec[k--] = 0;
      if (k < 0) break;
      ++vec[k];
    }
    interp.polys.erase(f);
    return false;
  }

  bool check_group(std::size_t level, const Interpretation& interp) {
    for (int ci : groups_[level])
      if (!compare(constraints_[ci], interp, sig_)) return false;
    return true;
  }

  const Signature& sig_;
  const std::vector<OrientationConstraint>& constraints_;
  int bound_;
  long max_assignments_;
  RedPairStats& stats_;
  std::vector<SymbolId> symbols_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<SymbolId>> constraint_syms_;
  std::vector<Component> components_;
  std::vector<int> ground_;  // constraints without symbols
  std::vector<std::vector<int>> groups_;  // per current component
};

}  // namespace

std::optional<RedPairModel> search_reduction_pair(
    const Signature& sig, const std::vector<SymbolId>& filterable,
    const ConstraintBuilder& build, const RedPairConfig& cfg,
    RedPairStats* stats_out) {
  RedPairStats local;
  RedPairStats& stats = stats_out ? *stats_out : local;
  stats = RedPairStats{};

  std::vector<ArgumentFiltering> pis = enumerate_filterings(
      sig, filterable, cfg.powerset_small_arity, cfg.max_filterings);

  for (const ArgumentFiltering& pi : pis) {
    if (stats.budget_exhausted) break;
    ++stats.filterings_tried;

    AppliedFiltering applied(sig, pi);
    std::optional<ConstraintSet> cs = build(applied);
    if (!cs) {
      ++stats.filterings_refused;
      continue;
    }
    const Signature& fsig = applied.filtered_signature();

    auto attempt = [&](int designated) -> std::optional<Interpretation> {
      std::vector<OrientationConstraint> all;
      all.reserve(cs->pair_cs.size() + cs->rule_cs.size());
      for (std::size_t i = 0; i < cs->pair_cs.size(); ++i) {
        OrientationConstraint c = cs->pair_cs[i];
        c.strict = static_cast<int>(i) == designated;
        all.push_back(std::move(c));
      }
      for (const OrientationConstraint& c : cs->rule_cs) {
        OrientationConstraint weak = c;
        weak.strict = false;
        all.push_back(std::move(weak));
      }
      CoefficientSearch search(fsig, all, cfg.coef_bound,
                               cfg.max_assignments, stats);
      return search.run();
    };

    std::optional<Interpretation> found;
    if (cs->pair_cs.empty()) {
      found = attempt(-1);
    } else {
      for (std::size_t d = 0; d < cs->pair_cs.size(); ++d) {
        found = attempt(static_cast<int>(d));
        if (found || stats.budget_exhausted) break;
      }
    }
    if (!found) continue;

    RedPairModel model;
    model.pi = pi;
    model.filtered_sig = fsig;
    model.interp = std::move(*found);
    model.constraints = *cs;
    for (const OrientationConstraint& c : cs->pair_cs)
      if (compare_strict(c.lhs, c.rhs, model.interp, fsig))
        model.strict_ids.push_back(c.id);
    return model;
  }
  return std::nullopt;
}

}  // namespace formadp
