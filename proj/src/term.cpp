#include "formadp/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace formadp {

struct Term::Node {
  bool is_var = false;
  // variable payload
  std::string name;
  // application payload
  SymbolId sym = kNoSymbol;
  std::vector<Term> args;
  // both
  SortId sort = kNoSort;
  std::size_t hash = 0;
  int size = 1;
};

namespace {

std::size_t hash_mix(std::size_t a, std::size_t b) {
  // boost-style combiner
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

}  // namespace

std::string position_to_string(const Position& pos) {
  if (pos.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += ".";
    out += std::to_string(pos[i] + 1);  // display 1-based
  }
  return out;
}

Term Term::var(std::string name, SortId sort) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->name = std::move(name);
  n->sort = sort;
  n->hash = hash_mix(std::hash<std::string>{}(n->name),
                     std::hash<int>{}(static_cast<int>(sort)));
  n->size = 1;
  return Term(std::move(n));
}

Term Term::app(const Signature& sig, SymbolId f, std::vector<Term> args) {
  const SortDecl& d = sig.decl(f);
  if (d.arity() != static_cast<int>(args.size()))
    throw Error("arity mismatch building term with " + sig.symbol_name(f) +
                ": expected " + std::to_string(d.arity()) + " arguments, got " +
                std::to_string(args.size()));
  auto n = std::make_shared<Node>();
  n->is_var = false;
  n->sym = f;
  n->sort = d.result;
  std::size_t h = std::hash<int>{}(static_cast<int>(f)) * 31 + 17;
  int sz = 1;
  for (const Term& a : args) {
    if (a.empty()) throw Error("empty term used as argument");
    h = hash_mix(h, a.hash());
    sz += a.size();
  }
  n->args = std::move(args);
  n->hash = h;
  n->size = sz;
  return Term(std::move(n));
}

const Term::Node& Term::node() const {
  if (!node_) throw Error("operation on empty term handle");
  return *node_;
}

bool Term::is_var() const { return node().is_var; }
bool Term::is_app() const { return !node().is_var; }

const std::string& Term::var_name() const {
  const Node& n = node();
  if (!n.is_var) throw Error("var_name on application term");
  return n.name;
}

SortId Term::var_sort() const {
  const Node& n = node();
  if (!n.is_var) throw Error("var_sort on application term");
  return n.sort;
}

SymbolId Term::sym() const {
  const Node& n = node();
  if (n.is_var) throw Error("sym on variable term");
  return n.sym;
}

const std::vector<Term>& Term::args() const {
  const Node& n = node();
  if (n.is_var) throw Error("args on variable term");
  return n.args;
}

SortId Term::sort() const { return node().sort; }

std::size_t Term::hash() const { return node().hash; }

int Term::size() const { return node().size; }

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.hash != b.hash || a.is_var != b.is_var || a.sort != b.sort)
    return false;
  if (a.is_var) return a.name == b.name;
  if (a.sym != b.sym || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!(a.args[i] == b.args[i])) return false;
  return true;
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  const Node& a = node();
  const Node& b = other.node();
  if (a.is_var != b.is_var)
    return a.is_var ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_var) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.sort <=> b.sort;
  }
  if (auto c = a.sym <=> b.sym; c != 0) return c;
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

const Term& Term::subterm_at(const Position& pos) const {
  const Term* cur = this;
  for (int i : pos) {
    const std::vector<Term>& as = cur->args();  // throws on variables
    if (i < 0 || i >= static_cast<int>(as.size()))
      throw Error("position out of range: " + position_to_string(pos));
    cur = &as[i];
  }
  return *cur;
}

Term Term::with_args(std::vector<Term> new_args) const {
  const Node& n = node();
  if (n.is_var) throw Error("with_args on variable term");
  if (new_args.size() != n.args.size())
    throw Error("with_args changes arity");
  auto nn = std::make_shared<Node>();
  nn->is_var = false;
  nn->sym = n.sym;
  nn->sort = n.sort;
  std::size_t h = std::hash<int>{}(static_cast<int>(n.sym)) * 31 + 17;
  int sz = 1;
  for (const Term& a : new_args) {
    if (a.empty()) throw Error("empty term used as argument");
    h = hash_mix(h, a.hash());
    sz += a.size();
  }
  nn->args = std::move(new_args);
  nn->hash = h;
  nn->size = sz;
  return Term(std::move(nn));
}

Term Term::replace_at(const Position& pos, const Term& replacement) const {
  if (pos.empty()) return replacement;
  std::function<Term(const Term&, std::size_t)> go =
      [&](const Term& t, std::size_t depth) -> Term {
    if (depth == pos.size()) return replacement;
    if (t.is_var()) throw Error("position under a variable");
    int i = pos[depth];
    if (i < 0 || i >= t.arity())
      throw Error("position out of range: " + position_to_string(pos));
    std::vector<Term> args = t.args();
    args[i] = go(args[i], depth + 1);
    return t.with_args(std::move(args));
  };
  return go(*this, 0);
}

std::vector<Position> Term::positions() const {
  std::vector<Position> out;
  Position cur;
  std::function<void(const Term&)> go = [&](const Term& t) {
    out.push_back(cur);
    if (t.is_app()) {
      for (int i = 0; i < t.arity(); ++i) {
        cur.push_back(i);
        go(t.args()[i]);
        cur.pop_back();
      }
    }
  };
  go(*this);
  return out;
}

std::vector<Var> Term::vars() const {
  std::vector<Var> out;
  std::set<Var> seen;
  std::function<void(const Term&)> go = [&](const Term& t) {
    if (t.is_var()) {
      Var v = t.as_var();
      if (seen.insert(v).second) out.push_back(v);
    } else {
      for (const Term& a : t.args()) go(a);
    }
  };
  go(*this);
  return out;
}

std::set<Var> Term::var_set() const {
  std::set<Var> out;
  std::function<void(const Term&)> go = [&](const Term& t) {
    if (t.is_var())
      out.insert(t.as_var());
    else
      for (const Term& a : t.args()) go(a);
  };
  go(*this);
  return out;
}

std::string Term::to_string(const Signature& sig) const {
  std::ostringstream os;
  std::function<void(const Term&)> go = [&](const Term& t) {
    if (t.is_var()) {
      os << t.var_name();
      return;
    }
    os << sig.symbol_name(t.sym());
    if (t.arity() > 0) {
      os << "(";
      for (int i = 0; i < t.arity(); ++i) {
        if (i) os << ",";
        go(t.args()[i]);
      }
      os << ")";
    }
  };
  go(*this);
  return os.str();
}

// --- Subst ---

void Subst::bind(const Var& v, const Term& t) {
  if (t.empty()) throw Error("binding to empty term");
  if (t.sort() != v.sort)
    throw SortError("sort-violating binding for variable " + v.name);
  auto [it, inserted] = map_.emplace(v, t);
  if (!inserted && !(it->second == t))
    throw Error("conflicting rebinding of variable " + v.name);
}

const Term* Subst::lookup(const Var& v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

Term Subst::apply(const Term& t) const {
  if (t.is_var()) {
    const Term* r = lookup(t.as_var());
    return r ? *r : t;
  }
  bool changed = false;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) {
    Term na = apply(a);
    if (!(na == a)) changed = true;
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return t.with_args(std::move(args));
}

Subst Subst::restrict_to(const std::set<Var>& vars) const {
  Subst out;
  for (const auto& [v, t] : map_)
    if (vars.count(v)) out.map_.emplace(v, t);
  return out;
}

Subst Subst::disjoint_union(const Subst& a, const Subst& b) {
  Subst out = a;
  for (const auto& [v, t] : b.map_) {
    auto [it, inserted] = out.map_.emplace(v, t);
    if (!inserted && !(it->second == t))
      throw Error("conflicting bindings for variable " + v.name);
  }
  return out;
}

std::string Subst::to_string(const Signature& sig) const {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : map_) {
    if (!first) out += ", ";
    first = false;
    out += v.name + " := " + t.to_string(sig);
  }
  return out + "}";
}

// --- FreshGen ---

Var FreshGen::next(SortId sort) {
  for (;;) {
    std::string name = "_" + std::to_string(++counter_);
    if (!taken_.count(name)) {
      taken_.insert(name);
      return Var{std::move(name), sort};
    }
  }
}

void FreshGen::reserve_names_of(const Term& t) {
  for (const Var& v : t.vars()) taken_.insert(v.name);
}

// --- operations ---

namespace {

SortId sort_of_rec(const Term& t, const Signature& sig, Position& pos) {
  if (t.is_var()) return t.var_sort();
  const SortDecl& d = sig.decl(t.sym());
  for (int i = 0; i < t.arity(); ++i) {
    pos.push_back(i);
    SortId got = sort_of_rec(t.args()[i], sig, pos);
    if (got != d.args[i])
      throw SortError("ill-sorted term: argument " + position_to_string(pos) +
                      " of " + sig.symbol_name(t.sym()) + " has sort " +
                      sig.sort_name(got) + ", expected " +
                      sig.sort_name(d.args[i]));
    pos.pop_back();
  }
  return d.result;
}

}  // namespace

SortId sort_of(const Term& t, const Signature& sig) {
  Position pos;
  return sort_of_rec(t, sig, pos);
}

bool is_linear(const Term& t) {
  std::set<Var> seen;
  std::function<bool(const Term&)> go = [&](const Term& u) {
    if (u.is_var()) return seen.insert(u.as_var()).second;
    for (const Term& a : u.args())
      if (!go(a)) return false;
    return true;
  };
  return go(t);
}

Term apply_subst(const Term& t, const Subst& sigma, const Signature& sig) {
  for (const auto& [v, r] : sigma.entries()) {
    if (sort_of(r, sig) != v.sort)
      throw SortError("sort-violating binding for variable " + v.name);
  }
  return sigma.apply(t);
}

namespace {

bool match_rec(const Term& pattern, const Term& subject, Subst& out) {
  if (pattern.is_var()) {
    Var v = pattern.as_var();
    if (subject.sort() != v.sort) return false;
    const Term* bound = out.lookup(v);
    if (bound) return *bound == subject;
    out.bind(v, subject);
    return true;
  }
  if (subject.is_var()) return false;
  if (pattern.sym() != subject.sym()) return false;
  for (int i = 0; i < pattern.arity(); ++i)
    if (!match_rec(pattern.args()[i], subject.args()[i], out)) return false;
  return true;
}

}  // namespace

std::optional<Subst> match(const Term& pattern, const Term& subject) {
  Subst out;
  if (!match_rec(pattern, subject, out)) return std::nullopt;
  return out;
}

bool has_shape(const Term& t, SymbolId f, const Signature& sig) {
  if (t.is_var()) return t.var_sort() == sig.result_sort(f);
  return t.sym() == f;
}

bool equal_mod_renaming(const Term& a, const Term& b) {
  std::map<Var, Var> fwd, bwd;
  std::function<bool(const Term&, const Term&)> go = [&](const Term& s,
                                                         const Term& t) {
    if (s.is_var() != t.is_var()) return false;
    if (s.is_var()) {
      Var vs = s.as_var(), vt = t.as_var();
      if (vs.sort != vt.sort) return false;
      auto [itf, insf] = fwd.emplace(vs, vt);
      if (!insf && !(itf->second == vt)) return false;
      auto [itb, insb] = bwd.emplace(vt, vs);
      if (!insb && !(itb->second == vs)) return false;
      return true;
    }
    if (s.sym() != t.sym() || s.arity() != t.arity()) return false;
    for (int i = 0; i < s.arity(); ++i)
      if (!go(s.args()[i], t.args()[i])) return false;
    return true;
  };
  return go(a, b);
}

Term rename_vars(const Term& t, FreshGen& gen) {
  std::map<Var, Term> renaming;
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    if (u.is_var()) {
      Var v = u.as_var();
      auto it = renaming.find(v);
      if (it == renaming.end()) {
        Term fresh = Term::var(gen.next(v.sort));
        it = renaming.emplace(v, fresh).first;
      }
      return it->second;
    }
    std::vector<Term> args;
    args.reserve(u.args().size());
    for (const Term& a : u.args()) args.push_back(go(a));
    return u.with_args(std::move(args));
  };
  return go(t);
}

}  // namespace formadp
