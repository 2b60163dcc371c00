#include "formadp/rule_filters.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

#include "formadp/unify.hpp"

namespace formadp {

bool RuleSetResult::contains(int id) const {
  return std::binary_search(ids.begin(), ids.end(), id);
}

std::vector<Rule> RuleSetResult::select(const std::vector<Rule>& rules) const {
  std::vector<Rule> out;
  for (const Rule& r : rules)
    if (contains(r.id)) out.push_back(r);
  return out;
}

namespace {

enum class FilterKind { Usable, Formative, SplitFormative };

/// Shared worklist saturation for the usable/formative/split-formative
/// families. Scans terms; each scan may include rules, and each included
/// rule enqueues one of its sides.
class Saturator {
 public:
  Saturator(FilterKind kind, const std::vector<Rule>& rules,
            const Signature& sig, const FilterOpts& opts)
      : kind_(kind), rules_(rules), sig_(sig), opts_(opts) {}

  void seed(const Term& t) { enqueue(t); }

  RuleSetResult run() {
    if (kind_ == FilterKind::SplitFormative) {
      for (const Rule& r : rules_)
        if (r.collapsing()) include(r, "collapsing rule of the combined system");
    }
    while (!queue_.empty() && !saturated_) {
      Term t = std::move(queue_.front());
      queue_.pop_front();
      scan(t);
    }
    RuleSetResult out;
    out.ids.assign(included_.begin(), included_.end());
    out.trace = std::move(trace_);
    return out;
  }

 private:
  void enqueue(const Term& t) {
    if (saturated_) return;
    if (scanned_.insert(t).second) queue_.push_back(t);
  }

  void include(const Rule& r, const std::string& reason) {
    if (!included_.insert(r.id).second) return;
    trace_.push_back({r.id, reason});
    switch (kind_) {
      case FilterKind::Usable:
        enqueue(r.rhs);
        break;
      case FilterKind::Formative:
        enqueue(r.lhs);
        break;
      case FilterKind::SplitFormative:
        if (!r.collapsing()) enqueue(r.lhs);
        break;
    }
  }

  void include_all(const std::string& reason) {
    for (const Rule& r : rules_)
      if (included_.insert(r.id).second) trace_.push_back({r.id, reason});
    saturated_ = true;
    queue_.clear();
  }

  void scan(const Term& t) {
    bool formative_family = kind_ != FilterKind::Usable;
    if (formative_family && !is_linear(t)) {
      include_all("non-linear pattern " + t.to_string(sig_));
      return;
    }
    if (t.is_var()) return;
    SymbolId f = t.sym();

    // inclusion clause
    Term capped;
    if (opts_.tcap && kind_ == FilterKind::Usable) {
      std::vector<Term> args;
      FreshGen gen;
      gen.reserve_names_of(t);
      for (const Term& a : t.args()) args.push_back(tcap(a, rules_, sig_, gen));
      capped = t.with_args(std::move(args));
    }
    for (const Rule& r : rules_) {
      if (included_.count(r.id)) continue;
      switch (kind_) {
        case FilterKind::Usable: {
          if (r.lhs.sym() != f) break;
          if (opts_.tcap && !unifies_renamed_apart(capped, r.lhs)) break;
          include(r, "root " + sig_.symbol_name(f) + " reached from " +
                         t.to_string(sig_));
          break;
        }
        case FilterKind::Formative: {
          if (opts_.tcap) {
            if (r.collapsing()) {
              if (r.rhs.sort() == t.sort())
                include(r, "collapsing rule of sort " +
                               sig_.sort_name(t.sort()) + " for " +
                               t.to_string(sig_));
            } else if (r.rhs.sym() == f && capped_rhs_unifies(r, t)) {
              include(r, "capped right-hand side unifies with " +
                             t.to_string(sig_));
            }
          } else if (has_shape(r.rhs, f, sig_)) {
            include(r, "right-hand side has shape " + sig_.symbol_name(f) +
                           " required by " + t.to_string(sig_));
          }
          break;
        }
        case FilterKind::SplitFormative: {
          if (r.collapsing()) break;  // already included up front
          if (r.rhs.sym() != f) break;
          if (opts_.tcap && !capped_rhs_unifies(r, t)) break;
          include(r, "right-hand side rooted " + sig_.symbol_name(f) +
                         " required by " + t.to_string(sig_));
          break;
        }
      }
      if (saturated_) return;
    }

    // argument recursion, restricted to regarded positions when filtered
    if (opts_.pi) {
      for (int i : opts_.pi->regarded(sig_, f)) enqueue(t.args()[i - 1]);
    } else {
      for (const Term& a : t.args()) enqueue(a);
    }
  }

  /// g(cap(r1),...,cap(rn)) unifies with t, both sides renamed apart.
  bool capped_rhs_unifies(const Rule& r, const Term& t) {
    FreshGen gen;
    gen.reserve_names_of(r.rhs);
    gen.reserve_names_of(t);
    std::vector<Term> args;
    for (const Term& a : r.rhs.args()) args.push_back(tcap(a, rules_, sig_, gen));
    Term capped = r.rhs.with_args(std::move(args));
    return unifies_renamed_apart(capped, t);
  }

  FilterKind kind_;
  const std::vector<Rule>& rules_;
  const Signature& sig_;
  FilterOpts opts_;
  std::deque<Term> queue_;
  std::unordered_set<Term, TermHash> scanned_;
  std::set<int> included_;
  std::vector<SaturationStep> trace_;
  bool saturated_ = false;
};

RuleSetResult run_filter(FilterKind kind, const std::vector<Term>& seeds,
                         const std::vector<Rule>& rules, const Signature& sig,
                         const FilterOpts& opts) {
  Saturator sat(kind, rules, sig, opts);
  for (const Term& t : seeds) sat.seed(t);
  return sat.run();
}

}  // namespace

RuleSetResult usable_rules(const Term& t, const std::vector<Rule>& rules,
                           const Signature& sig, const FilterOpts& opts) {
  return run_filter(FilterKind::Usable, {t}, rules, sig, opts);
}

RuleSetResult usable_rules(const std::vector<Rule>& pairs,
                           const std::vector<Rule>& rules,
                           const Signature& sig, const FilterOpts& opts) {
  std::vector<Term> seeds;
  for (const Rule& p : pairs) seeds.push_back(p.rhs);
  return run_filter(FilterKind::Usable, seeds, rules, sig, opts);
}

RuleSetResult formative_rules(const Term& t, const std::vector<Rule>& rules,
                              const Signature& sig, const FilterOpts& opts) {
  return run_filter(FilterKind::Formative, {t}, rules, sig, opts);
}

RuleSetResult formative_rules(const std::vector<Rule>& pairs,
                              const std::vector<Rule>& rules,
                              const Signature& sig, const FilterOpts& opts) {
  std::vector<Term> seeds;
  for (const Rule& p : pairs) seeds.push_back(p.lhs);
  return run_filter(FilterKind::Formative, seeds, rules, sig, opts);
}

RuleSetResult split_formative_rules(const Term& t, const std::vector<Rule>& A,
                                    const Signature& sig,
                                    const FilterOpts& opts) {
  return run_filter(FilterKind::SplitFormative, {t}, A, sig, opts);
}

RuleSetResult split_formative_rules(const std::vector<Rule>& pairs,
                                    const std::vector<Rule>& A,
                                    const Signature& sig,
                                    const FilterOpts& opts) {
  std::vector<Term> seeds;
  for (const Rule& p : pairs) seeds.push_back(p.lhs);
  return run_filter(FilterKind::SplitFormative, seeds, A, sig, opts);
}

std::vector<Rule> ce_rules(Signature& sig, int first_id) {
  std::vector<Rule> out;
  int id = first_id;
  for (SortId s : sig.user_sorts()) {
    SymbolId c = sig.add_ce_symbol(s);
    Term x = Term::var("x", s);
    Term y = Term::var("y", s);
    Term lhs = Term::app(sig, c, {x, y});
    Provenance prov{Provenance::Kind::Derived, {}, "paired projection"};
    out.push_back(Rule{id++, lhs, x, prov});
    out.push_back(Rule{id++, lhs, y, prov});
  }
  return out;
}

namespace {

/// Canonical variable renaming (v0, v1, ... in traversal order) so that
/// alpha-equivalent rules collide in the saturation set.
Rule canonical_rule(const Rule& r) {
  std::map<Var, Term> ren;
  int n = 0;
  std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
    if (t.is_var()) {
      Var v = t.as_var();
      auto it = ren.find(v);
      if (it == ren.end())
        it = ren.emplace(v, Term::var("v" + std::to_string(n++), v.sort)).first;
      return it->second;
    }
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(go(a));
    return t.with_args(std::move(args));
  };
  Rule out = r;
  out.lhs = go(r.lhs);
  out.rhs = go(r.rhs);
  return out;
}

bool is_projection(const Rule& r) {
  if (!r.rhs.is_var() || r.lhs.is_var()) return false;
  std::set<Var> seen;
  bool rhs_found = false;
  for (const Term& a : r.lhs.args()) {
    if (!a.is_var()) return false;
    if (!seen.insert(a.as_var()).second) return false;
    if (a == r.rhs) rhs_found = true;
  }
  return rhs_found;
}

}  // namespace

std::vector<Rule> CombinedSystem::all() const {
  std::vector<Rule> out = cl;
  out.insert(out.end(), nc.begin(), nc.end());
  return out;
}

CombinedSystem combine_rules(const std::vector<Rule>& rules,
                             const Signature& sig, int first_derived_id) {
  // uniform-sort guard: every symbol in the rules must be single-sorted
  for (const Rule& r : rules) {
    for (const Term* side : {&r.lhs, &r.rhs}) {
      for (const Position& p : side->positions()) {
        const Term& s = side->subterm_at(p);
        if (s.is_var()) continue;
        const SortDecl& d = sig.decl(s.sym());
        for (SortId a : d.args)
          if (a != d.result)
            throw PreconditionError(
                "combined system requires a single-sorted signature; collapse "
                "sorts first");
      }
    }
  }

  CombinedSystem cs;
  int next_id = 0;
  for (const Rule& r : rules) next_id = std::max(next_id, r.id);
  ++next_id;
  next_id = std::max(next_id, first_derived_id);

  struct Key {
    Term lhs, rhs;
    bool operator<(const Key& o) const {
      if (auto c = lhs <=> o.lhs; c != 0) return c < 0;
      return (rhs <=> o.rhs) < 0;
    }
  };
  std::map<Key, int> index;  // canonical rule -> id in X
  std::map<int, Rule> members;
  std::deque<int> work;

  // projections present in X, keyed by (symbol, 0-based arg)
  std::map<std::pair<SymbolId, int>, int> proj_in_x;

  auto add = [&](const Rule& candidate, const std::string& reason) -> int {
    Rule canon = canonical_rule(candidate);
    Key key{canon.lhs, canon.rhs};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    Rule stored = candidate;
    if (stored.id == 0) stored.id = next_id++;
    index.emplace(key, stored.id);
    members.emplace(stored.id, stored);
    if (!reason.empty()) cs.trace.push_back({stored.id, reason});
    work.push_back(stored.id);
    return stored.id;
  };

  auto make_projection = [&](SymbolId f, int i) -> Rule {
    const SortDecl& d = sig.decl(f);
    std::vector<Term> xs;
    for (int k = 0; k < d.arity(); ++k)
      xs.push_back(Term::var("x" + std::to_string(k + 1), d.args[k]));
    Term rhs = xs[i];
    Rule r;
    r.id = 0;
    r.lhs = Term::app(sig, f, std::move(xs));
    r.rhs = rhs;
    r.prov = {Provenance::Kind::Derived, {}, "projection"};
    return r;
  };

  for (const Rule& r : rules) add(r, "");

  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    Rule r = members.at(id);

    if (is_projection(r)) {
      int i = 0;
      for (; i < r.lhs.arity(); ++i)
        if (r.lhs.args()[i] == r.rhs) break;
      auto key = std::make_pair(r.lhs.sym(), i);
      if (!proj_in_x.count(key)) {
        proj_in_x.emplace(key, id);
        // clause (b) for all known rules whose rhs is rooted here
        for (const auto& [mid, m] : std::map<int, Rule>(members)) {
          if (m.rhs.is_var() || m.rhs.sym() != r.lhs.sym()) continue;
          Rule derived;
          derived.id = 0;
          derived.lhs = m.lhs;
          derived.rhs = m.rhs.args()[i];
          derived.prov = {Provenance::Kind::Derived,
                          {mid, id},
                          "argument " + std::to_string(i + 1) +
                              " of the right-hand side"};
          add(derived, "from rule " + std::to_string(mid) + " and projection " +
                           std::to_string(id));
        }
      }
    }

    if (r.rhs.is_var()) {
      // clause (a): any lhs subterm carrying the collapsed variable forces a
      // projection
      for (const Position& p : r.lhs.positions()) {
        const Term& s = r.lhs.subterm_at(p);
        if (s.is_var()) continue;
        for (int i = 0; i < s.arity(); ++i) {
          bool carries = false;
          for (const Var& v : s.args()[i].var_set())
            if (Term::var(v) == r.rhs) carries = true;
          if (!carries) continue;
          Rule proj = make_projection(s.sym(), i);
          proj.prov.from = {id};
          add(proj, "projection forced by collapsing rule " +
                        std::to_string(id));
        }
      }
    } else {
      // clause (b): project the rhs through any matching projection in X
      SymbolId f = r.rhs.sym();
      for (int i = 0; i < r.rhs.arity(); ++i) {
        auto it = proj_in_x.find({f, i});
        if (it == proj_in_x.end()) continue;
        Rule derived;
        derived.id = 0;
        derived.lhs = r.lhs;
        derived.rhs = r.rhs.args()[i];
        derived.prov = {Provenance::Kind::Derived,
                        {id, it->second},
                        "argument " + std::to_string(i + 1) +
                            " of the right-hand side"};
        add(derived, "from rule " + std::to_string(id) + " and projection " +
                         std::to_string(it->second));
      }
    }
  }

  for (const auto& [id, r] : members) {
    if (is_projection(r))
      cs.cl.push_back(r);
    else if (!r.rhs.is_var())
      cs.nc.push_back(r);
    // collapsing non-projection members are dropped from the combined system
  }
  return cs;
}

}  // namespace formadp
