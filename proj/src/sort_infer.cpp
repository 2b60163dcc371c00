#include "formadp/sort_infer.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace formadp {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

std::string sort_label(int k) {
  std::string s;
  ++k;
  while (k > 0) {
    --k;
    s.insert(s.begin(), static_cast<char>('A' + k % 26));
    k /= 26;
  }
  return s;
}

}  // namespace

Mtrs infer_sorts(const Mtrs& system) {
  const Signature& sig = system.sig;
  for (SymbolId f = 0; f < sig.symbol_count(); ++f)
    if (sig.is_marked(f) || sig.is_ce(f))
      throw PreconditionError("sort inference expects a plain user system");

  // one node per (symbol, slot): slot 0 is the result, slot i argument i
  std::vector<int> base(sig.symbol_count() + 1, 0);
  for (SymbolId f = 0; f < sig.symbol_count(); ++f)
    base[f + 1] = base[f] + 1 + sig.arity(f);
  int fixed_nodes = base[sig.symbol_count()];

  // plus one node per rule variable, allocated on the fly
  std::map<std::pair<int, std::string>, int> var_node;
  int total = fixed_nodes;
  for (const Rule& r : system.rules)
    for (const Term& side : {r.lhs, r.rhs})
      for (const Var& v : side.vars()) {
        auto key = std::make_pair(r.id, v.name);
        if (!var_node.count(key)) var_node[key] = total++;
      }
  // one extra node per rule for the shared sort of both sides
  std::map<int, int> rule_node;
  for (const Rule& r : system.rules) rule_node[r.id] = total++;

  UnionFind uf(total);

  auto result_node = [&](SymbolId f) { return base[f]; };
  auto arg_node = [&](SymbolId f, int i) { return base[f] + 1 + i; };

  std::function<void(const Term&, int, int)> constrain =
      [&](const Term& t, int expected, int rid) {
        if (t.is_var()) {
          uf.unite(var_node.at({rid, t.var_name()}), expected);
          return;
        }
        uf.unite(result_node(t.sym()), expected);
        for (int i = 0; i < t.arity(); ++i)
          constrain(t.args()[i], arg_node(t.sym(), i), rid);
      };

  for (const Rule& r : system.rules) {
    constrain(r.lhs, rule_node.at(r.id), r.id);
    constrain(r.rhs, rule_node.at(r.id), r.id);
  }

  // canonical names in declaration order, arguments before result
  std::map<int, std::string> class_name;
  int next = 0;
  auto name_of = [&](int node) -> const std::string& {
    int root = uf.find(node);
    auto it = class_name.find(root);
    if (it == class_name.end())
      it = class_name.emplace(root, sort_label(next++)).first;
    return it->second;
  };

  Mtrs out;
  out.innermost_only = system.innermost_only;
  for (SymbolId f = 0; f < sig.symbol_count(); ++f) {
    SortDecl d;
    for (int i = 0; i < sig.arity(f); ++i)
      d.args.push_back(out.sig.intern_sort(name_of(arg_node(f, i))));
    d.result = out.sig.intern_sort(name_of(result_node(f)));
    out.sig.add_symbol(sig.symbol_name(f), d);
  }

  for (const Rule& r : system.rules) {
    std::function<Term(const Term&, SortId)> rebuild =
        [&](const Term& t, SortId expected) -> Term {
      if (t.is_var()) return Term::var(t.var_name(), expected);
      const SortDecl& d = out.sig.decl(t.sym());
      std::vector<Term> args;
      args.reserve(t.arity());
      for (int i = 0; i < t.arity(); ++i)
        args.push_back(rebuild(t.args()[i], d.args[i]));
      return Term::app(out.sig, t.sym(), std::move(args));
    };
    SortId top = *out.sig.find_sort(name_of(rule_node.at(r.id)));
    Rule nr{r.id, rebuild(r.lhs, top), rebuild(r.rhs, top), r.prov};
    out.rules.push_back(std::move(nr));
  }
  return out;
}

}  // namespace formadp
