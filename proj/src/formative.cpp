#include "formadp/formative.hpp"

#include <algorithm>
#include <functional>

namespace formadp {

namespace {

Position prefixed(int head, const Position& rest) {
  Position out;
  out.reserve(rest.size() + 1);
  out.push_back(head);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

Position prefixed(const Position& head, const Position& rest) {
  Position out = head;
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

int last_root_step(const std::vector<Step>& steps) {
  for (int i = static_cast<int>(steps.size()) - 1; i >= 0; --i)
    if (steps[i].pos.empty()) return i;
  return -1;
}

/// Splits a root-step-free trace from f(s1,...,sn) into one trace per
/// argument, stripping the leading position index.
std::vector<ReductionTrace> split_arguments(const ReductionTrace& tr) {
  std::vector<ReductionTrace> out(tr.start.arity());
  for (int i = 0; i < tr.start.arity(); ++i)
    out[i].start = tr.start.args()[i];
  for (const Step& st : tr.steps) {
    if (st.pos.empty()) throw Error("split_arguments on trace with root step");
    Step sub;
    sub.pos.assign(st.pos.begin() + 1, st.pos.end());
    sub.rule_id = st.rule_id;
    sub.subst = st.subst;
    out[st.pos[0]].steps.push_back(std::move(sub));
  }
  return out;
}

bool parse_formative(const ReductionTrace& tr, const Term& pattern,
                     const std::vector<Rule>& rules) {
  if (!is_linear(pattern)) return true;
  if (pattern.is_var()) return tr.steps.empty();
  int k = last_root_step(tr.steps);
  if (k < 0) {
    if (tr.start.is_var() || tr.start.sym() != pattern.sym()) return false;
    std::vector<ReductionTrace> args = split_arguments(tr);
    for (int i = 0; i < pattern.arity(); ++i)
      if (!parse_formative(args[i], pattern.args()[i], rules)) return false;
    return true;
  }
  const Step& root = tr.steps[k];
  const Rule& rho = rule_by_id_or_throw(rules, root.rule_id);
  ReductionTrace prefix{tr.start,
                        {tr.steps.begin(), tr.steps.begin() + k}};
  if (!parse_formative(prefix, rho.lhs, rules)) return false;
  ReductionTrace suffix;
  suffix.start = root.subst.apply(rho.rhs);
  suffix.steps.assign(tr.steps.begin() + k + 1, tr.steps.end());
  if (suffix.start.is_var() || suffix.start.sym() != pattern.sym())
    return false;
  std::vector<ReductionTrace> args = split_arguments(suffix);
  for (int i = 0; i < pattern.arity(); ++i)
    if (!parse_formative(args[i], pattern.args()[i], rules)) return false;
  return true;
}

}  // namespace

bool is_formative_reduction(const ReductionTrace& trace, const Term& pattern,
                            const Subst& gamma,
                            const std::vector<Rule>& rules) {
  Term end = trace.end(rules);  // validates the steps
  if (!(end == gamma.apply(pattern)))
    throw PreconditionError(
        "trace does not end at the instantiated pattern");
  return parse_formative(trace, pattern, rules);
}

// ---------------------------------------------------------------------------
// Postponement: turning an arbitrary witnessing reduction into a formative
// one. Works over parallel traces; the count of parallel steps is the
// termination measure, since replaying postponed work under a duplicating
// right-hand side may grow the number of sequential steps.
// ---------------------------------------------------------------------------

namespace {

struct ParStep {
  std::vector<Step> steps;  // pairwise disjoint positions
};

struct ParTrace {
  Term start;
  std::vector<ParStep> psteps;
};

ParTrace lift(const ReductionTrace& tr) {
  ParTrace out;
  out.start = tr.start;
  for (const Step& st : tr.steps) out.psteps.push_back(ParStep{{st}});
  return out;
}

ReductionTrace flatten(const ParTrace& pt) {
  ReductionTrace out;
  out.start = pt.start;
  for (const ParStep& ps : pt.psteps)
    for (const Step& st : ps.steps) out.steps.push_back(st);
  return out;
}

bool has_root_step(const ParStep& ps) {
  for (const Step& st : ps.steps)
    if (st.pos.empty()) return true;
  return false;
}

std::vector<ParTrace> split_arguments_par(const ParTrace& pt) {
  std::vector<ParTrace> out(pt.start.arity());
  for (int i = 0; i < pt.start.arity(); ++i) out[i].start = pt.start.args()[i];
  for (const ParStep& ps : pt.psteps) {
    std::vector<ParStep> per_arg(pt.start.arity());
    for (const Step& st : ps.steps) {
      Step sub;
      sub.pos.assign(st.pos.begin() + 1, st.pos.end());
      sub.rule_id = st.rule_id;
      sub.subst = st.subst;
      per_arg[st.pos[0]].steps.push_back(std::move(sub));
    }
    for (int i = 0; i < pt.start.arity(); ++i)
      if (!per_arg[i].steps.empty())
        out[i].psteps.push_back(std::move(per_arg[i]));
  }
  return out;
}

struct MfResult {
  Subst delta;
  ReductionTrace formative;
  std::map<Var, ParTrace> postponed;
};

class Postponer {
 public:
  Postponer(const std::vector<Rule>& rules) : rules_(rules) {}

  /// Requires: the parallel trace ends at pattern*gamma.
  MfResult run(const ParTrace& pt, const Term& pattern, const Subst& gamma) {
    if (!is_linear(pattern)) {
      MfResult res;
      std::set<Var> pv = pattern.var_set();
      res.delta = gamma.restrict_to(pv);
      res.formative = flatten(pt);
      for (const Var& v : pv) {
        const Term* b = res.delta.lookup(v);
        res.postponed.emplace(v, ParTrace{b ? *b : Term::var(v), {}});
      }
      return res;
    }
    if (pattern.is_var()) {
      MfResult res;
      Var v = pattern.as_var();
      res.delta.bind(v, pt.start);
      res.formative = ReductionTrace{pt.start, {}};
      res.postponed.emplace(v, pt);
      return res;
    }

    int k = -1;
    for (int i = static_cast<int>(pt.psteps.size()) - 1; i >= 0; --i)
      if (has_root_step(pt.psteps[i])) {
        k = i;
        break;
      }

    if (k < 0) return run_argumentwise(pt, pattern, gamma);

    const ParStep& rootstep = pt.psteps[k];
    if (rootstep.steps.size() != 1)
      throw Error("root step sharing a parallel step");
    const Step& root = rootstep.steps[0];
    const Rule& rho = rule_by_id_or_throw(rules_, root.rule_id);

    ParTrace pt1{pt.start, {pt.psteps.begin(), pt.psteps.begin() + k}};
    MfResult r1 = run(pt1, rho.lhs, root.subst);

    Term after = r1.delta.apply(rho.rhs);
    ParTrace rest;
    rest.start = after;

    // replay the postponed argument work under the (possibly duplicating)
    // right-hand side, one parallel layer at a time
    std::vector<std::pair<Position, Var>> var_positions;
    for (const Position& p : rho.rhs.positions()) {
      const Term& s = rho.rhs.subterm_at(p);
      if (s.is_var()) var_positions.emplace_back(p, s.as_var());
    }
    std::size_t layers = 0;
    for (const auto& [p, v] : var_positions) {
      auto it = r1.postponed.find(v);
      if (it == r1.postponed.end())
        throw Error("rule variable without postponed trace");
      layers = std::max(layers, it->second.psteps.size());
    }
    for (std::size_t j = 0; j < layers; ++j) {
      ParStep layer;
      for (const auto& [p, v] : var_positions) {
        const ParTrace& d = r1.postponed.at(v);
        if (j >= d.psteps.size()) continue;
        for (const Step& st : d.psteps[j].steps) {
          Step placed;
          placed.pos = prefixed(p, st.pos);
          placed.rule_id = st.rule_id;
          placed.subst = st.subst;
          layer.steps.push_back(std::move(placed));
        }
      }
      if (!layer.steps.empty()) rest.psteps.push_back(std::move(layer));
    }
    rest.psteps.insert(rest.psteps.end(), pt.psteps.begin() + k + 1,
                       pt.psteps.end());

    MfResult r2 = run(rest, pattern, gamma);

    MfResult res;
    res.delta = r2.delta;
    res.postponed = std::move(r2.postponed);
    res.formative.start = pt.start;
    res.formative.steps = r1.formative.steps;
    res.formative.steps.push_back(Step{{}, rho.id, r1.delta});
    res.formative.steps.insert(res.formative.steps.end(),
                               r2.formative.steps.begin(),
                               r2.formative.steps.end());
    return res;
  }

 private:
  MfResult run_argumentwise(const ParTrace& pt, const Term& pattern,
                            const Subst& gamma) {
    if (pt.start.is_var() || pt.start.sym() != pattern.sym())
      throw Error("parallel trace out of sync with pattern");
    std::vector<ParTrace> args = split_arguments_par(pt);
    MfResult res;
    res.formative.start = pt.start;
    for (int i = 0; i < pattern.arity(); ++i) {
      const Term& li = pattern.args()[i];
      MfResult ri = run(args[i], li, gamma.restrict_to(li.var_set()));
      res.delta = Subst::disjoint_union(res.delta, ri.delta);
      for (auto& [v, d] : ri.postponed) res.postponed.emplace(v, std::move(d));
      for (const Step& st : ri.formative.steps) {
        Step placed;
        placed.pos = prefixed(i, st.pos);
        placed.rule_id = st.rule_id;
        placed.subst = st.subst;
        res.formative.steps.push_back(std::move(placed));
      }
    }
    return res;
  }

  const std::vector<Rule>& rules_;
};

}  // namespace

FormativeWitness make_formative(const ReductionTrace& witness,
                                const Term& pattern, const Subst& gamma,
                                const std::vector<Rule>& rules) {
  Term end = witness.end(rules);  // validates
  if (!(end == gamma.apply(pattern)))
    throw PreconditionError(
        "witness does not end at the instantiated pattern");

  Postponer post(rules);
  MfResult mf = post.run(lift(witness), pattern, gamma);

  FormativeWitness out;
  out.delta = mf.delta;
  out.trace = mf.formative;
  out.gamma = gamma.restrict_to(pattern.var_set());
  for (auto& [v, d] : mf.postponed) out.postponed.emplace(v, flatten(d));

  // sanity: the construction must yield a formative reduction to
  // pattern*delta, with the postponed work reconnecting delta to gamma
  Term fend = out.trace.end(rules);
  if (!(fend == out.delta.apply(pattern)))
    throw Error("postponement produced a broken trace");
  if (!is_formative_reduction(out.trace, pattern, out.delta, rules))
    throw Error("postponement produced a non-formative trace");
  for (const auto& [v, d] : out.postponed) {
    const Term* dv = out.delta.lookup(v);
    const Term* gv = out.gamma.lookup(v);
    if (!dv || !gv) continue;
    if (!(d.start == *dv) || !(d.end(rules) == *gv))
      throw Error("postponed trace out of sync");
  }
  return out;
}

std::optional<FormativeWitness> find_formative(
    const Term& start, const Term& pattern, const std::vector<Rule>& rules,
    const Signature& sig, const BoundedOpts& opts, const FilterOpts& fr_opts) {
  BoundedResult br = bounded_reductions(start, rules, opts);
  for (const ReductionTrace& tr : br.traces) {
    auto gamma = match(pattern, tr.end(rules));
    if (!gamma) continue;
    FormativeWitness w = make_formative(tr, pattern, *gamma, rules);
    RuleSetResult fr = formative_rules(pattern, rules, sig, fr_opts);
    for (const Step& st : w.trace.steps) {
      if (!fr.contains(st.rule_id))
        throw Error("formative trace uses a rule outside the approximation");
    }
    return w;
  }
  return std::nullopt;
}

}  // namespace formadp
