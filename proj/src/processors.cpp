#include "formadp/processors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>

namespace formadp {

const char* to_string(RuleSetStrategy s) {
  switch (s) {
    case RuleSetStrategy::AllR:
      return "all-R";
    case RuleSetStrategy::Usable:
      return "usable";
    case RuleSetStrategy::FormativeUsable:
      return "formative-of-filtered-usable";
    case RuleSetStrategy::SplitFormative:
      return "split-formative";
    case RuleSetStrategy::FilteredFormative:
      return "filtered-formative";
    case RuleSetStrategy::AproveIntersection:
      return "aprove-intersection";
  }
  return "?";
}

std::optional<RuleSetStrategy> strategy_from_name(const std::string& name) {
  static const std::map<std::string, RuleSetStrategy> table = {
      {"all-R", RuleSetStrategy::AllR},
      {"usable", RuleSetStrategy::Usable},
      {"formative-of-filtered-usable", RuleSetStrategy::FormativeUsable},
      {"split-formative", RuleSetStrategy::SplitFormative},
      {"filtered-formative", RuleSetStrategy::FilteredFormative},
      {"aprove-intersection", RuleSetStrategy::AproveIntersection},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

ProcOutcome proc_formative_trim(const DPProblem& problem) {
  RuleSetResult fr =
      formative_rules(problem.pairs, problem.rules, problem.sig);

  DPProblem child = problem;
  child.rules = fr.select(problem.rules);

  TrimCertificate cert;
  cert.kept_rule_ids = fr.ids;
  for (const Rule& r : problem.rules)
    if (!fr.contains(r.id)) cert.removed_rule_ids.push_back(r.id);

  if (problem.f2 != StratFlag::Formative) {
    // without the formative flag the surviving chain may be non-minimal,
    // and an innermost chain may stop being innermost
    cert.downgraded_minimality = problem.f1 == MinFlag::Minimal;
    cert.dropped_innermost = problem.f2 == StratFlag::Innermost;
    child.f1 = MinFlag::Arbitrary;
    child.f2 = StratFlag::Arbitrary;
  }

  ProcOutcome out;
  out.progressed = !cert.removed_rule_ids.empty();
  out.children.push_back(std::move(child));
  out.cert = std::move(cert);
  return out;
}

ProcOutcome proc_dependency_graph(const DPProblem& problem) {
  DependencyGraph g = estimated_dependency_graph(problem);
  std::vector<std::vector<int>> comps = nontrivial_sccs(g);

  GraphCertificate cert;
  std::set<int> kept;
  for (const std::vector<int>& comp : comps) {
    std::vector<int> ids;
    for (int i : comp) {
      ids.push_back(problem.pairs[i].id);
      kept.insert(i);
    }
    cert.scc_pair_ids.push_back(std::move(ids));
  }
  for (std::size_t i = 0; i < problem.pairs.size(); ++i)
    if (!kept.count(static_cast<int>(i)))
      cert.removed_pair_ids.push_back(problem.pairs[i].id);

  ProcOutcome out;
  out.progressed =
      comps.size() != 1 || kept.size() != problem.pairs.size();
  if (out.progressed) {
    for (const std::vector<int>& comp : comps) {
      DPProblem child = problem;
      child.pairs.clear();
      for (int i : comp) child.pairs.push_back(problem.pairs[i]);
      out.children.push_back(std::move(child));
    }
  } else {
    out.children.push_back(problem);
  }
  out.cert = std::move(cert);
  return out;
}

namespace {

void term_symbols(const Term& t, std::set<SymbolId>& out) {
  if (t.is_var()) return;
  out.insert(t.sym());
  for (const Term& a : t.args()) term_symbols(a, out);
}

std::vector<Rule> translate_rules(const std::vector<Rule>& rules,
                                  const Signature& to) {
  std::vector<Rule> out;
  out.reserve(rules.size());
  for (const Rule& r : rules) {
    Rule nr = r;
    nr.lhs = translate_term(r.lhs, to);
    nr.rhs = translate_term(r.rhs, to);
    out.push_back(std::move(nr));
  }
  return out;
}

/// Weak orientation requirements for already-assembled rules.
std::vector<OrientationConstraint> weak_of(const std::vector<Rule>& rules) {
  std::vector<OrientationConstraint> out;
  out.reserve(rules.size());
  for (const Rule& r : rules) out.push_back({r.lhs, r.rhs, false, r.id});
  return out;
}

std::vector<Rule> filter_rules(const std::vector<Rule>& rules,
                               const AppliedFiltering& af) {
  std::vector<Rule> out;
  out.reserve(rules.size());
  for (const Rule& r : rules) out.push_back(af.filter(r));
  return out;
}

/// U per the reduction-pair theorems: the usable rules alone under the
/// innermost flag, the usable rules plus the paired projections under
/// minimality, all of R otherwise. pi may be null for the trivial filtering.
std::vector<Rule> select_u(const DPProblem& pr, const std::vector<Rule>& ce,
                           const Signature& sig, const ArgumentFiltering* pi,
                           bool tcap) {
  FilterOpts opts{pi, tcap};
  if (pr.f2 == StratFlag::Innermost)
    return usable_rules(pr.pairs, pr.rules, sig, opts).select(pr.rules);
  if (pr.f1 == MinFlag::Minimal) {
    std::vector<Rule> u =
        usable_rules(pr.pairs, pr.rules, sig, opts).select(pr.rules);
    u.insert(u.end(), ce.begin(), ce.end());
    return u;
  }
  return pr.rules;
}

int max_id(const DPProblem& pr, const std::vector<Rule>& ce) {
  int m = 0;
  for (const Rule& r : pr.rules) m = std::max(m, r.id);
  for (const Rule& p : pr.pairs) m = std::max(m, p.id);
  for (const Rule& c : ce) m = std::max(m, c.id);
  return m;
}

}  // namespace

ProcOutcome proc_reduction_pair(const DPProblem& problem,
                                const RedPairProcConfig& config) {
  ProcOutcome fail;
  fail.children.push_back(problem);
  fail.progressed = false;
  if (problem.pairs.empty()) {
    fail.note = "no pairs to orient";
    return fail;
  }

  // workspace signature: the problem signature, extended with the paired
  // projections when the flags let them join U
  Signature work = problem.sig;
  std::vector<Rule> ce;
  bool want_ce = problem.f1 == MinFlag::Minimal &&
                 problem.f2 != StratFlag::Innermost &&
                 config.strategy != RuleSetStrategy::AllR;
  if (want_ce) {
    int first = 0;
    for (const Rule& r : problem.rules) first = std::max(first, r.id);
    for (const Rule& p : problem.pairs) first = std::max(first, p.id);
    ce = ce_rules(work, first + 1);
  }
  int id_floor = max_id(problem, ce) + 1;

  std::set<SymbolId> occurring;
  for (const Rule& p : problem.pairs) {
    term_symbols(p.lhs, occurring);
    term_symbols(p.rhs, occurring);
  }
  for (const Rule& r : problem.rules) {
    term_symbols(r.lhs, occurring);
    term_symbols(r.rhs, occurring);
  }
  std::vector<SymbolId> filterable(occurring.begin(), occurring.end());

  auto pair_constraints = [&](const AppliedFiltering& af) {
    return weak_of(filter_rules(problem.pairs, af));
  };

  ConstraintBuilder builder;
  std::string refusal;  // remembered diagnosis for refused filterings

  switch (config.strategy) {
    case RuleSetStrategy::AllR:
      builder = [&](const AppliedFiltering& af)
          -> std::optional<ConstraintSet> {
        ConstraintSet cs;
        cs.pair_cs = pair_constraints(af);
        cs.rule_cs = weak_of(filter_rules(problem.rules, af));
        return cs;
      };
      break;

    case RuleSetStrategy::Usable:
      builder = [&](const AppliedFiltering& af)
          -> std::optional<ConstraintSet> {
        std::vector<Rule> u =
            select_u(problem, ce, work, &af.pi(), config.tcap);
        ConstraintSet cs;
        cs.pair_cs = pair_constraints(af);
        cs.rule_cs = weak_of(filter_rules(u, af));
        return cs;
      };
      break;

    case RuleSetStrategy::FormativeUsable:
      // filter P and U first, then keep only the formative rules of the
      // filtered pairs within the filtered system
      builder = [&](const AppliedFiltering& af)
          -> std::optional<ConstraintSet> {
        std::vector<Rule> u =
            select_u(problem, ce, work, &af.pi(), config.tcap);
        std::vector<Rule> fu = filter_rules(u, af);
        std::vector<Rule> fp = filter_rules(problem.pairs, af);
        RuleSetResult sel =
            formative_rules(fp, fu, af.filtered_signature(),
                            FilterOpts{nullptr, config.tcap});
        ConstraintSet cs;
        cs.pair_cs = weak_of(fp);
        cs.rule_cs = weak_of(sel.select(fu));
        return cs;
      };
      break;

    case RuleSetStrategy::FilteredFormative: {
      // the filtering is folded into the formative-rules computation; the
      // base variant fixes U with the trivial filtering up front
      auto u_base = std::make_shared<std::vector<Rule>>(
          config.tcap ? std::vector<Rule>{}
                      : select_u(problem, ce, work, nullptr, false));
      builder = [&, u_base](const AppliedFiltering& af)
          -> std::optional<ConstraintSet> {
        std::vector<Rule> u =
            config.tcap ? select_u(problem, ce, work, &af.pi(), true)
                        : *u_base;
        RuleSetResult sel = formative_rules(
            problem.pairs, u, work, FilterOpts{&af.pi(), config.tcap});
        ConstraintSet cs;
        cs.pair_cs = pair_constraints(af);
        cs.rule_cs = weak_of(filter_rules(sel.select(u), af));
        return cs;
      };
      break;
    }

    case RuleSetStrategy::SplitFormative:
      if (!config.tcap) {
        // combined system of the filtered usable rules; the variable
        // condition must survive the filtering or this filtering is out
        builder = [&, id_floor](const AppliedFiltering& af)
            -> std::optional<ConstraintSet> {
          std::vector<Rule> u =
              select_u(problem, ce, work, &af.pi(), false);
          std::vector<Rule> fu;
          fu.reserve(u.size());
          for (const Rule& r : u) {
            Rule f = af.filter(r);
            if (!satisfies_var_condition(f)) {
              refusal =
                  "a filtered usable rule breaks the variable condition";
              return std::nullopt;
            }
            fu.push_back(std::move(f));
          }
          Mtrs fm;
          fm.sig = af.filtered_signature();
          fm.rules = std::move(fu);
          Mtrs cm = collapse_sorts(fm);
          CombinedSystem a = combine_rules(cm.rules, cm.sig, id_floor);
          std::vector<Rule> all = a.all();
          std::vector<Rule> fp =
              translate_rules(filter_rules(problem.pairs, af), cm.sig);
          RuleSetResult sel =
              split_formative_rules(fp, all, cm.sig, FilterOpts{});
          ConstraintSet cs;
          cs.pair_cs = weak_of(fp);
          cs.rule_cs = weak_of(sel.select(all));
          return cs;
        };
      } else {
        // capped variant: U ignores the filtering, so the combined system
        // can be built once; the filtering acts inside the rule selection
        // and on the orientation requirements
        std::vector<Rule> u = select_u(problem, ce, work, nullptr, true);
        for (const Rule& r : u) {
          if (!satisfies_var_condition(r)) {
            fail.note = "rule " + std::to_string(r.id) +
                        " breaks the variable condition";
            return fail;
          }
        }
        Mtrs um;
        um.sig = work;
        um.rules = u;
        auto cm = std::make_shared<Mtrs>(collapse_sorts(um));
        auto a = std::make_shared<CombinedSystem>(
            combine_rules(cm->rules, cm->sig, id_floor));
        auto cpairs = std::make_shared<std::vector<Rule>>(
            translate_rules(problem.pairs, cm->sig));
        builder = [&, cm, a, cpairs](const AppliedFiltering& af)
            -> std::optional<ConstraintSet> {
          std::vector<Rule> all = a->all();
          RuleSetResult sel = split_formative_rules(
              *cpairs, all, cm->sig, FilterOpts{&af.pi(), true});
          AppliedFiltering caf(cm->sig, af.pi());
          ConstraintSet cs;
          cs.pair_cs = weak_of(filter_rules(*cpairs, caf));
          cs.rule_cs = weak_of(filter_rules(sel.select(all), caf));
          return cs;
        };
      }
      break;

    case RuleSetStrategy::AproveIntersection: {
      // capped formative rules over the trivially-filtered usable rules,
      // intersected with the filtered usable rules; the projections join
      // unconditionally under minimality
      bool plain = problem.f1 == MinFlag::Arbitrary &&
                   problem.f2 != StratFlag::Innermost;
      std::vector<Rule> base_u;
      if (plain) {
        base_u = problem.rules;
      } else {
        base_u = usable_rules(problem.pairs, problem.rules, work,
                              FilterOpts{nullptr, true})
                     .select(problem.rules);
        base_u.insert(base_u.end(), ce.begin(), ce.end());
      }
      auto shared_u = std::make_shared<std::vector<Rule>>(std::move(base_u));
      builder = [&, shared_u, plain](const AppliedFiltering& af)
          -> std::optional<ConstraintSet> {
        RuleSetResult fr = formative_rules(problem.pairs, *shared_u, work,
                                           FilterOpts{&af.pi(), true});
        std::vector<Rule> oriented;
        if (plain) {
          oriented = fr.select(*shared_u);
        } else {
          RuleSetResult ur =
              usable_rules(problem.pairs, problem.rules, work,
                           FilterOpts{&af.pi(), true});
          for (const Rule& r : fr.select(*shared_u))
            if (ur.contains(r.id)) oriented.push_back(r);
          oriented.insert(oriented.end(), ce.begin(), ce.end());
        }
        ConstraintSet cs;
        cs.pair_cs = pair_constraints(af);
        cs.rule_cs = weak_of(filter_rules(oriented, af));
        return cs;
      };
      break;
    }
  }

  RedPairStats stats;
  std::optional<RedPairModel> model =
      search_reduction_pair(work, filterable, builder, config.search, &stats);
  if (!model) {
    fail.note = "no reduction pair found (" +
                std::to_string(stats.filterings_tried) + " filterings, " +
                std::to_string(stats.assignments_tried) + " assignments" +
                (stats.budget_exhausted ? ", budget exhausted" : "") + ")";
    if (stats.filterings_refused > 0 && !refusal.empty())
      fail.note += "; " + std::to_string(stats.filterings_refused) +
                   " filterings refused: " + refusal;
    return fail;
  }

  // replay the certificate through the comparison before accepting it
  const Signature& fsig = model->filtered_sig;
  for (const OrientationConstraint& c : model->constraints.rule_cs)
    if (!compare_weak(c.lhs, c.rhs, model->interp, fsig))
      throw Error("reduction pair replay failed on rule " +
                  std::to_string(c.id));
  std::set<int> strict;
  for (const OrientationConstraint& c : model->constraints.pair_cs) {
    if (!compare_weak(c.lhs, c.rhs, model->interp, fsig))
      throw Error("reduction pair replay failed on pair " +
                  std::to_string(c.id));
    if (compare_strict(c.lhs, c.rhs, model->interp, fsig))
      strict.insert(c.id);
  }
  std::set<int> reported(model->strict_ids.begin(), model->strict_ids.end());
  if (strict != reported || strict.empty())
    throw Error("reduction pair replay disagrees with the search");

  DPProblem child = problem;
  child.pairs.clear();
  for (const Rule& p : problem.pairs)
    if (!strict.count(p.id)) child.pairs.push_back(p);

  RedPairCertificate cert;
  cert.strategy = config.strategy;
  cert.tcap = config.tcap;
  cert.pi = model->pi;
  cert.constraint_sig = model->filtered_sig;
  cert.interp = model->interp;
  cert.removed_pair_ids.assign(strict.begin(), strict.end());
  cert.constraints = model->constraints;
  cert.notes.push_back(
      "filterings tried: " + std::to_string(stats.filterings_tried) +
      ", refused: " + std::to_string(stats.filterings_refused) +
      ", assignments: " + std::to_string(stats.assignments_tried));

  ProcOutcome out;
  out.progressed = true;
  out.children.push_back(std::move(child));
  out.cert = std::move(cert);
  return out;
}

}  // namespace formadp
