#include "formadp/dp.hpp"

#include <algorithm>
#include <set>

#include "formadp/rule_filters.hpp"
#include "formadp/unify.hpp"

namespace formadp {

const char* to_string(MinFlag f) {
  return f == MinFlag::Minimal ? "m" : "a";
}

const char* to_string(StratFlag f) {
  switch (f) {
    case StratFlag::Arbitrary: return "arbitrary";
    case StratFlag::Formative: return "formative";
    case StratFlag::Innermost: return "innermost";
  }
  return "?";
}

DpResult dependency_pairs(const Mtrs& system) {
  DpResult out;
  out.sig = system.sig;

  std::set<SymbolId> defined;
  for (SymbolId f : system.defined_symbols()) defined.insert(f);

  int next_id = system.max_rule_id();
  for (const Rule& r : system.rules) {
    SymbolId froot = r.lhs.sym();
    SymbolId fsharp = out.sig.mark(froot);
    Term marked_lhs = Term::app(out.sig, fsharp, r.lhs.args());
    for (const Position& p : r.rhs.positions()) {
      const Term& sub = r.rhs.subterm_at(p);
      if (!sub.is_app() || !defined.count(sub.sym())) continue;
      SymbolId gsharp = out.sig.mark(sub.sym());
      Term marked_rhs = Term::app(out.sig, gsharp, sub.args());
      Rule pair{0, marked_lhs, marked_rhs,
                Provenance{Provenance::Kind::DependencyPair, {r.id}, ""}};
      bool dup = false;
      for (const Rule& q : out.pairs)
        if (rule_equal_mod_renaming(q, pair)) {
          dup = true;
          break;
        }
      if (dup) continue;
      pair.id = ++next_id;
      out.pairs.push_back(std::move(pair));
    }
  }
  return out;
}

DPProblem initial_problem(const Mtrs& system, bool use_formative_start) {
  if (use_formative_start && system.innermost_only)
    throw PreconditionError(
        "the formative start is unavailable for innermost problems; the "
        "framework must begin from the full rule set");

  DpResult dp = dependency_pairs(system);
  DPProblem out;
  out.sig = std::move(dp.sig);
  out.pairs = std::move(dp.pairs);
  out.f1 = MinFlag::Minimal;

  if (use_formative_start) {
    RuleSetResult fr = formative_rules(out.pairs, system.rules, out.sig);
    out.rules = fr.select(system.rules);
    out.f2 = StratFlag::Formative;
  } else {
    out.rules = system.rules;
    out.f2 = system.innermost_only ? StratFlag::Innermost
                                   : StratFlag::Arbitrary;
  }
  return out;
}

bool DependencyGraph::has_edge(int from, int to) const {
  const std::vector<int>& row = adj[from];
  return std::find(row.begin(), row.end(), to) != row.end();
}

DependencyGraph estimated_dependency_graph(const DPProblem& problem) {
  DependencyGraph g;
  int n = static_cast<int>(problem.pairs.size());
  g.adj.resize(n);
  std::vector<Term> capped;
  capped.reserve(n);
  for (const Rule& p : problem.pairs)
    capped.push_back(tcap(p.rhs, problem.rules, problem.sig));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (unifies_renamed_apart(capped[i], problem.pairs[j].lhs))
        g.adj[i].push_back(j);
  return g;
}

namespace {

/// Iterative Tarjan; emits components in a deterministic order.
class Tarjan {
 public:
  explicit Tarjan(const DependencyGraph& g)
      : g_(g), n_(static_cast<int>(g.adj.size())) {
    index_.assign(n_, -1);
    low_.assign(n_, 0);
    on_stack_.assign(n_, false);
  }

  std::vector<std::vector<int>> run() {
    for (int v = 0; v < n_; ++v)
      if (index_[v] < 0) visit(v);
    return comps_;
  }

 private:
  void visit(int root) {
    struct Frame { int v; std::size_t next; };
    std::vector<Frame> work{{root, 0}};
    open(root);
    while (!work.empty()) {
      Frame& f = work.back();
      if (f.next < g_.adj[f.v].size()) {
        int w = g_.adj[f.v][f.next++];
        if (index_[w] < 0) {
          open(w);
          work.push_back({w, 0});
        } else if (on_stack_[w]) {
          low_[f.v] = std::min(low_[f.v], index_[w]);
        }
      } else {
        if (low_[f.v] == index_[f.v]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack_.back();
            stack_.pop_back();
            on_stack_[w] = false;
            comp.push_back(w);
          } while (w != f.v);
          std::sort(comp.begin(), comp.end());
          comps_.push_back(std::move(comp));
        }
        int v = f.v;
        work.pop_back();
        if (!work.empty())
          low_[work.back().v] = std::min(low_[work.back().v], low_[v]);
      }
    }
  }

  void open(int v) {
    index_[v] = low_[v] = counter_++;
    stack_.push_back(v);
    on_stack_[v] = true;
  }

  const DependencyGraph& g_;
  int n_;
  int counter_ = 0;
  std::vector<int> index_, low_, stack_;
  std::vector<bool> on_stack_;
  std::vector<std::vector<int>> comps_;
};

}  // namespace

std::vector<std::vector<int>> nontrivial_sccs(const DependencyGraph& g) {
  std::vector<std::vector<int>> all = Tarjan(g).run();
  std::vector<std::vector<int>> out;
  for (std::vector<int>& comp : all) {
    if (comp.size() >= 2 || g.has_edge(comp[0], comp[0]))
      out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return out;
}

}  // namespace formadp
