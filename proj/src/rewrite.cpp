#include "formadp/rewrite.hpp"

#include <deque>
#include <unordered_set>

namespace formadp {

const Rule& rule_by_id_or_throw(const std::vector<Rule>& rules, int id) {
  for (const Rule& r : rules)
    if (r.id == id) return r;
  throw PreconditionError("no rule with id " + std::to_string(id));
}

Term apply_step(const Term& t, const Step& step,
                const std::vector<Rule>& rules) {
  const Rule& r = rule_by_id_or_throw(rules, step.rule_id);
  const Term& redex = t.subterm_at(step.pos);
  Term expected = step.subst.apply(r.lhs);
  if (!(expected == redex))
    throw PreconditionError("step does not apply: rule " +
                            std::to_string(step.rule_id) + " at " +
                            position_to_string(step.pos));
  return t.replace_at(step.pos, step.subst.apply(r.rhs));
}

std::vector<Term> ReductionTrace::replay(const std::vector<Rule>& rules) const {
  std::vector<Term> out;
  out.reserve(steps.size() + 1);
  out.push_back(start);
  Term cur = start;
  for (const Step& st : steps) {
    cur = apply_step(cur, st, rules);
    out.push_back(cur);
  }
  return out;
}

Term ReductionTrace::end(const std::vector<Rule>& rules) const {
  Term cur = start;
  for (const Step& st : steps) cur = apply_step(cur, st, rules);
  return cur;
}

std::vector<std::pair<Term, Step>> reducts(const Term& t,
                                           const std::vector<Rule>& rules) {
  std::vector<std::pair<Term, Step>> out;
  for (const Position& pos : t.positions()) {
    const Term& sub = t.subterm_at(pos);
    if (sub.is_var()) continue;
    for (const Rule& r : rules) {
      if (!satisfies_var_condition(r))
        throw PreconditionError("rewriting with rule " + std::to_string(r.id) +
                                " which introduces fresh variables");
      auto gamma = match(r.lhs, sub);
      if (!gamma) continue;
      Term result = t.replace_at(pos, gamma->apply(r.rhs));
      out.emplace_back(std::move(result), Step{pos, r.id, std::move(*gamma)});
    }
  }
  return out;
}

bool is_normal_form(const Term& t, const std::vector<Rule>& rules) {
  for (const Position& pos : t.positions()) {
    const Term& sub = t.subterm_at(pos);
    if (sub.is_var()) continue;
    for (const Rule& r : rules)
      if (match(r.lhs, sub)) return false;
  }
  return true;
}

std::vector<std::pair<Term, Step>> innermost_reducts(
    const Term& t, const std::vector<Rule>& rules) {
  std::vector<std::pair<Term, Step>> out;
  for (auto& [result, step] : reducts(t, rules)) {
    const Term& redex = t.subterm_at(step.pos);
    bool inner = true;
    for (const Term& a : redex.args()) {
      if (!is_normal_form(a, rules)) {
        inner = false;
        break;
      }
    }
    if (inner) out.emplace_back(std::move(result), std::move(step));
  }
  return out;
}

BoundedResult bounded_reductions(const Term& s, const std::vector<Rule>& rules,
                                 const BoundedOpts& opts) {
  BoundedResult res;
  std::unordered_set<Term, TermHash> seen_terms;
  seen_terms.insert(s);

  // breadth-first over traces; every prefix is itself a result
  std::deque<std::pair<Term, ReductionTrace>> frontier;
  ReductionTrace empty{s, {}};
  res.traces.push_back(empty);
  frontier.emplace_back(s, std::move(empty));

  while (!frontier.empty()) {
    auto [cur, trace] = std::move(frontier.front());
    frontier.pop_front();
    if (trace.steps.size() >= opts.max_steps) continue;
    for (auto& [next, step] : reducts(cur, rules)) {
      if (res.traces.size() >= opts.max_traces) {
        res.truncated = true;
        res.distinct_terms = seen_terms.size();
        return res;
      }
      if (seen_terms.insert(next).second &&
          seen_terms.size() > opts.max_distinct_terms) {
        res.truncated = true;
        res.distinct_terms = seen_terms.size();
        return res;
      }
      ReductionTrace ext = trace;
      ext.steps.push_back(std::move(step));
      res.traces.push_back(ext);
      frontier.emplace_back(std::move(next), std::move(ext));
    }
  }
  res.distinct_terms = seen_terms.size();
  return res;
}

bool reachable_within(const Term& from, const Term& to,
                      const std::vector<Rule>& rules, const BoundedOpts& opts) {
  if (from == to) return true;
  std::unordered_set<Term, TermHash> seen;
  seen.insert(from);
  std::deque<std::pair<Term, std::size_t>> frontier;
  frontier.emplace_back(from, 0);
  while (!frontier.empty()) {
    auto [cur, depth] = std::move(frontier.front());
    frontier.pop_front();
    if (depth >= opts.max_steps) continue;
    for (auto& [next, step] : reducts(cur, rules)) {
      (void)step;
      if (next == to) return true;
      if (!seen.insert(next).second) continue;
      if (seen.size() > opts.max_distinct_terms) return false;
      frontier.emplace_back(std::move(next), depth + 1);
    }
  }
  return false;
}

}  // namespace formadp
