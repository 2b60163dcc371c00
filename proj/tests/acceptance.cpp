// Acceptance run over the bundled list/number fixture plus the randomized
// suite. Prints one PASS/FAIL line per criterion and exits nonzero if any
// criterion fails. Expects to run from the repository root so the fixture
// resolves by relative path.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "formadp/dp.hpp"
#include "formadp/formative.hpp"
#include "formadp/parser.hpp"
#include "formadp/processors.hpp"
#include "formadp/prove.hpp"
#include "formadp/rule_filters.hpp"
#include "property_checks.hpp"

using namespace formadp;
using namespace formadp::testing;

namespace {

int g_failed = 0;

double secs_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void criterion(int n, const std::string& what,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  std::string line =
      "criterion " + std::to_string(n) + ": " + (ok ? "PASS" : "FAIL") + "  " + what;
  if (!detail.empty()) line += "  (" + detail + ")";
  std::printf("%s\n", line.c_str());
  if (!ok) ++g_failed;
}

Mtrs load_fixture() {
  return parse_problem_file("tests/fixtures/running.trs").system;
}

std::vector<Rule> select_ids(const std::vector<Rule>& rules,
                             const std::vector<int>& ids) {
  std::vector<Rule> out;
  for (const Rule& r : rules)
    if (std::find(ids.begin(), ids.end(), r.id) != ids.end()) out.push_back(r);
  return out;
}

std::string show_ids(const std::vector<int>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ids[i]);
  }
  return s + "}";
}

Step step_at(const Term& t, const std::vector<Rule>& rules, const Position& pos,
             int rule_id) {
  const Rule& r = rule_by_id_or_throw(rules, rule_id);
  auto gamma = match(r.lhs, t.subterm_at(pos));
  if (!gamma) throw Error("step does not apply");
  return Step{pos, rule_id, *gamma};
}

const Rule& big_pair_of(const DpResult& dp) {
  const Rule* p = pair_with_root(dp.pairs, dp.sig, "Big#", "Big#");
  if (!p) throw Error("Big# self-pair not found");
  return *p;
}

}  // namespace

int main() {
  criterion(1, "pair extraction on the fixture yields the ten expected pairs",
            [](std::string& d) {
              Mtrs m = load_fixture();
              auto t0 = std::chrono::steady_clock::now();
              DpResult dp = dependency_pairs(m);
              double secs = secs_since(t0);
              const Signature& sig = dp.sig;

              Term x = mkvar(sig, "x", "NAT");
              Term y = mkvar(sig, "y", "NAT");
              Term z = mkvar(sig, "z", "LIST");
              Term l = mkvar(sig, "l", "LIST");
              auto S = [&](Term t) { return mk(sig, "S", {t}); };
              Term consyz = mk(sig, "Cons", {y, z});
              Term consxl = mk(sig, "Cons", {x, l});

              std::vector<Rule> want;
              auto add = [&](Term lhs, Term rhs) {
                want.push_back(Rule{0, lhs, rhs, {}});
              };
              add(mk(sig, "Rnd#", {S(x)}), mk(sig, "Rnd#", {x}));
              add(mk(sig, "Big#", {x, consyz}),
                  mk(sig, "Big#", {mk(sig, "Ack", {x, y}), mk(sig, "Upd", {z})}));
              add(mk(sig, "Big#", {x, consyz}), mk(sig, "Ack#", {x, y}));
              add(mk(sig, "Big#", {x, consyz}), mk(sig, "Upd#", {z}));
              add(mk(sig, "Upd#", {consxl}), mk(sig, "Rnd#", {x}));
              add(mk(sig, "Upd#", {consxl}), mk(sig, "Upd#", {l}));
              add(mk(sig, "Run#", {consxl}), mk(sig, "Big#", {x, l}));
              add(mk(sig, "Ack#", {S(x), y}), mk(sig, "Ack#", {x, S(y)}));
              add(mk(sig, "Ack#", {S(x), S(y)}),
                  mk(sig, "Ack#", {x, mk(sig, "Ack", {S(x), y})}));
              add(mk(sig, "Ack#", {S(x), S(y)}), mk(sig, "Ack#", {S(x), y}));

              if (dp.pairs.size() != 10) {
                d = std::to_string(dp.pairs.size()) + " pairs";
                return false;
              }
              if (!same_rules_mod_renaming(dp.pairs, want)) {
                d = "pair shapes differ";
                return false;
              }
              if (secs >= 1.0) {
                d = "took " + std::to_string(secs) + " s";
                return false;
              }
              d = "10 pairs in " + std::to_string(static_cast<int>(secs * 1e6)) +
                  " us";
              return true;
            });

  criterion(2, "trimming against the full pair set keeps nine of eleven rules",
            [](std::string& d) {
              Mtrs m = load_fixture();
              DpResult dp = dependency_pairs(m);
              RuleSetResult fr = formative_rules(dp.pairs, m.rules, dp.sig);
              std::vector<int> want = {1, 2, 3, 5, 6, 7, 8, 10, 11};
              if (fr.ids != want) {
                d = "kept " + show_ids(fr.ids);
                return false;
              }
              return true;
            });

  criterion(3, "formative rules of the Big# pair over the trimmed set are {8}",
            [](std::string& d) {
              Mtrs m = load_fixture();
              DpResult dp = dependency_pairs(m);
              std::vector<Rule> q =
                  select_ids(m.rules, {1, 2, 3, 5, 6, 7, 8, 10, 11});
              RuleSetResult fr = formative_rules({big_pair_of(dp)}, q, dp.sig);
              FilterOpts tc;
              tc.tcap = true;
              RuleSetResult frt =
                  formative_rules({big_pair_of(dp)}, q, dp.sig, tc);
              if (fr.ids != std::vector<int>{8}) {
                d = "syntactic set " + show_ids(fr.ids);
                return false;
              }
              if (frt.ids != std::vector<int>{8}) {
                d = "capped set " + show_ids(frt.ids);
                return false;
              }
              return true;
            });

  criterion(4,
            "usable rules of the Big# pair over the collapsed trimmed set are "
            "{1,2,3,5,8,10,11}",
            [](std::string& d) {
              Mtrs m = load_fixture();
              DpResult dp = dependency_pairs(m);
              Mtrs flat;
              flat.sig = dp.sig;
              flat.rules = select_ids(m.rules, {1, 2, 3, 5, 6, 7, 8, 10, 11});
              Mtrs collapsed = collapse_sorts(flat);
              const Rule& big = big_pair_of(dp);
              Rule flat_pair;
              flat_pair.id = big.id;
              flat_pair.lhs = translate_term(big.lhs, collapsed.sig);
              flat_pair.rhs = translate_term(big.rhs, collapsed.sig);
              RuleSetResult ur =
                  usable_rules({flat_pair}, collapsed.rules, collapsed.sig);
              std::vector<int> want = {1, 2, 3, 5, 8, 10, 11};
              if (ur.ids != want) {
                d = "got " + show_ids(ur.ids);
                return false;
              }
              return true;
            });

  criterion(5,
            "combining those usable rules yields three projections and eight "
            "composites",
            [](std::string& d) {
              Mtrs m = load_fixture();
              DpResult dp = dependency_pairs(m);
              Mtrs flat;
              flat.sig = dp.sig;
              flat.rules = select_ids(m.rules, {1, 2, 3, 5, 8, 10, 11});
              Mtrs collapsed = collapse_sorts(flat);
              CombinedSystem a = combine_rules(collapsed.rules, collapsed.sig);

              const Signature& sig = collapsed.sig;
              SortId o = *sig.find_sort("o");
              Term x = Term::var("x", o);
              Term y = Term::var("y", o);
              auto S = [&](Term t) { return mk(sig, "S", {t}); };

              std::vector<Rule> want_cl;
              want_cl.push_back(Rule{0, mk(sig, "Rnd", {x}), x, {}});
              want_cl.push_back(Rule{0, S(x), x, {}});
              want_cl.push_back(Rule{0, mk(sig, "Ack", {x, y}), y, {}});

              std::vector<Rule> want_nc =
                  select_ids(collapsed.rules, {2, 3, 5, 8, 10, 11});
              want_nc.push_back(Rule{0, mk(sig, "Ack", {S(x), y}), S(y), {}});
              want_nc.push_back(Rule{0, mk(sig, "Ack", {S(x), S(y)}),
                                     mk(sig, "Ack", {S(x), y}),
                                     {}});

              if (!same_rules_mod_renaming(a.cl, want_cl)) {
                d = "projection half has " + std::to_string(a.cl.size()) +
                    " rules";
                return false;
              }
              if (!same_rules_mod_renaming(a.nc, want_nc)) {
                d = "composite half has " + std::to_string(a.nc.size()) +
                    " rules";
                return false;
              }
              return true;
            });

  criterion(6,
            "split-formative rules keep the projections plus rule 8, and "
            "collapsing rules enter unconditionally",
            [](std::string& d) {
              Mtrs m = load_fixture();
              DpResult dp = dependency_pairs(m);
              Mtrs flat;
              flat.sig = dp.sig;
              flat.rules = select_ids(m.rules, {1, 2, 3, 5, 8, 10, 11});
              Mtrs collapsed = collapse_sorts(flat);
              CombinedSystem a = combine_rules(collapsed.rules, collapsed.sig);

              Term pattern =
                  translate_term(big_pair_of(dp).lhs, collapsed.sig);
              RuleSetResult sr =
                  split_formative_rules(pattern, a.all(), collapsed.sig);
              std::vector<Rule> got = sr.select(a.all());
              std::vector<Rule> want = a.cl;
              for (const Rule& r : collapsed.rules)
                if (r.id == 8) want.push_back(r);
              if (got.size() != 4 || !same_rules_mod_renaming(got, want)) {
                d = "kept " + show_ids(sr.ids);
                return false;
              }

              Mtrs tiny =
                  parse_problem("(VAR x)(RULES f(x) -> g(x) g(x) -> x)").system;
              SortId o = *tiny.sig.find_sort("o");
              SymbolId a_sym = tiny.sig.add_symbol("a", {{}, o});
              RuleSetResult sr2 = split_formative_rules(
                  Term::app(tiny.sig, a_sym, {}), tiny.rules, tiny.sig);
              if (sr2.ids != std::vector<int>{2}) {
                d = "constant pattern kept " + show_ids(sr2.ids);
                return false;
              }
              return true;
            });

  criterion(7,
            "the reduction-pair search removes the Big# pair, a handwritten "
            "interpretation replays its constraints, and the full proof "
            "answers YES",
            [](std::string& d) {
              Mtrs m = load_fixture();
              DpResult dp = dependency_pairs(m);
              DPProblem pr{dp.sig,
                           {big_pair_of(dp)},
                           m.rules,
                           MinFlag::Minimal,
                           StratFlag::Arbitrary};
              RedPairProcConfig cfg;  // coefficient bound 3, usable+formative
              ProcOutcome out = proc_reduction_pair(pr, cfg);
              const auto* cert = std::get_if<RedPairCertificate>(&out.cert);
              if (!out.progressed || !cert) {
                d = "search declined: " + out.note;
                return false;
              }
              if (cert->removed_pair_ids != std::vector<int>{13}) {
                d = "removed " + show_ids(cert->removed_pair_ids);
                return false;
              }
              if (!cert->pi.trivial()) {
                d = "expected the trivial filtering";
                return false;
              }

              // the familiar hand model: Big# sums its arguments, Cons counts
              // its tail, Ack vanishes, Upd and Rnd are transparent
              const Signature& csig = cert->constraint_sig;
              Interpretation hand;
              auto put = [&](const std::string& name, std::vector<long> coeffs,
                             long constant) {
                hand.polys[*csig.find_symbol(name)] =
                    LinearPoly{std::move(coeffs), constant};
              };
              put("Big#", {1, 1}, 0);
              put("Ack", {0, 0}, 0);
              put("Upd", {1}, 0);
              put("Cons", {0, 1}, 1);
              put("Rnd", {1}, 0);
              put("c_LIST", {1, 1}, 0);
              for (const OrientationConstraint& c : cert->constraints.pair_cs)
                if (!compare(c, hand, csig)) {
                  d = "hand model rejects a pair constraint";
                  return false;
                }
              for (const OrientationConstraint& c : cert->constraints.rule_cs)
                if (!compare(c, hand, csig)) {
                  d = "hand model rejects a rule constraint";
                  return false;
                }

              ProveConfig pc;
              ProveResult res = prove(m, pc);
              if (res.verdict != Verdict::Yes) {
                d = "prove answered MAYBE";
                return false;
              }
              if (res.elapsed_secs >= 60.0) {
                d = "proof took " + std::to_string(res.elapsed_secs) + " s";
                return false;
              }
              d = "proof of " + std::to_string(res.nodes) + " nodes";
              return true;
            });

  criterion(8,
            "trimming the looping-pair system keeps only the f rules and "
            "records the minimality downgrade",
            [](std::string& d) {
              Mtrs m =
                  parse_problem("(VAR x)(RULES a -> b f(x) -> c f(a) -> f(a))")
                      .system;
              Signature sig = m.sig;
              SortId o = *sig.find_sort("o");
              SymbolId g = sig.add_symbol("g", {{o}, o});
              SymbolId h = sig.add_symbol("h", {{o}, o});
              SymbolId gs = sig.mark(g);
              SymbolId hs = sig.mark(h);
              Term x = Term::var("x", o);

              std::vector<Rule> pairs;
              pairs.push_back(Rule{100, Term::app(sig, gs, {x}),
                                   Term::app(sig, hs, {mk(sig, "f", {x})}),
                                   {}});
              pairs.push_back(Rule{101, Term::app(sig, hs, {mk(sig, "c")}),
                                   Term::app(sig, gs, {mk(sig, "a")}),
                                   {}});

              RuleSetResult fr = formative_rules(pairs, m.rules, sig);
              if (fr.ids != std::vector<int>{2, 3}) {
                d = "kept " + show_ids(fr.ids);
                return false;
              }

              DPProblem p{sig, pairs, m.rules, MinFlag::Minimal,
                          StratFlag::Arbitrary};
              ProcOutcome out = proc_formative_trim(p);
              const auto* cert = std::get_if<TrimCertificate>(&out.cert);
              if (!cert || out.children.size() != 1) {
                d = "trim produced no certificate";
                return false;
              }
              if (!cert->downgraded_minimality ||
                  out.children[0].f1 != MinFlag::Arbitrary) {
                d = "downgrade not recorded";
                return false;
              }
              if (ids_of(out.children[0].rules) != std::vector<int>{2, 3}) {
                d = "child rules " + show_ids(ids_of(out.children[0].rules));
                return false;
              }
              return true;
            });

  criterion(9, "the randomized suite passes over 1000 generated systems",
            [](std::string& d) {
              auto t0 = std::chrono::steady_clock::now();
              PropertyStats st = run_property_suite(1000, 20260815u);
              double secs = secs_since(t0);
              if (!st.ok()) {
                d = std::to_string(st.failures.size()) + " failures, first: " +
                    st.failures.front();
                return false;
              }
              if (secs >= 300.0) {
                d = "took " + std::to_string(secs) + " s";
                return false;
              }
              d = std::to_string(st.postponements) + " postponements, " +
                  std::to_string(st.combined_found) + " combined searches, " +
                  std::to_string(st.proofs_yes) + " proofs in " +
                  std::to_string(static_cast<int>(secs + 0.5)) + " s";
              return true;
            });

  criterion(10,
            "a formative reduction may use rules outside the split-formative "
            "set of the raw system",
            [](std::string& d) {
              Mtrs m =
                  parse_problem("(VAR x)(RULES f(x) -> g(x) g(x) -> x)").system;
              SortId o = *m.sig.find_sort("o");
              SymbolId a_sym = m.sig.add_symbol("a", {{}, o});
              Term pat = Term::app(m.sig, a_sym, {});
              Term start = mk(m.sig, "f", {pat});

              ReductionTrace trace{start, {step_at(start, m.rules, {}, 1)}};
              trace.steps.push_back(
                  step_at(trace.end(m.rules), m.rules, {}, 2));
              if (trace.end(m.rules) != pat) {
                d = "trace does not reach the constant";
                return false;
              }
              if (!is_formative_reduction(trace, pat, Subst{}, m.rules)) {
                d = "trace not recognized as formative";
                return false;
              }
              RuleSetResult sr = split_formative_rules(pat, m.rules, m.sig);
              if (sr.ids != std::vector<int>{2}) {
                d = "split-formative set " + show_ids(sr.ids);
                return false;
              }
              if (sr.contains(1)) {
                d = "set unexpectedly covers the trace";
                return false;
              }
              return true;
            });

  if (g_failed == 0) {
    std::printf("all 10 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failed);
  return 1;
}
