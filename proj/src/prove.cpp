#include "formadp/prove.hpp"

#include <chrono>

namespace formadp {

const char* to_string(Verdict v) {
  return v == Verdict::Yes ? "YES" : "MAYBE";
}

namespace {

using Clock = std::chrono::steady_clock;

struct Engine {
  const ProveConfig& cfg;
  Clock::time_point deadline;
  int nodes = 0;
  bool all_closed = true;

  bool exhausted() const {
    return nodes >= cfg.max_nodes || Clock::now() >= deadline;
  }

  ProofNode solve(const DPProblem& problem) {
    ProofNode node;
    node.problem = problem;
    ++nodes;

    if (problem.pairs.empty()) {
      node.processor = "qed";
      node.qed = true;
      return node;
    }
    if (exhausted()) {
      node.processor = "open";
      node.open = true;
      node.note = "budget exhausted";
      all_closed = false;
      return node;
    }

    ProcOutcome graph = proc_dependency_graph(problem);
    if (graph.progressed) {
      node.processor = "dependency graph";
      node.cert = std::move(graph.cert);
      if (graph.children.empty()) node.qed = true;
      for (const DPProblem& child : graph.children)
        node.children.push_back(solve(child));
      return node;
    }

    RedPairProcConfig rp;
    rp.strategy = cfg.strategy;
    rp.tcap = cfg.tcap;
    rp.search = cfg.search;
    ProcOutcome red = proc_reduction_pair(problem, rp);
    if (red.progressed) {
      node.processor = "reduction pair";
      node.cert = std::move(red.cert);
      for (const DPProblem& child : red.children)
        node.children.push_back(solve(child));
      return node;
    }

    node.processor = "open";
    node.open = true;
    node.note = red.note;
    all_closed = false;
    return node;
  }
};

}  // namespace

ProveResult prove(const Mtrs& system, const ProveConfig& config) {
  auto start = Clock::now();
  ProveResult result;

  bool formative = config.formative_start && !system.innermost_only;
  DPProblem initial = initial_problem(system, formative);
  if (formative) {
    std::size_t kept = initial.rules.size();
    result.notes.push_back("formative start kept " + std::to_string(kept) +
                           " of " + std::to_string(system.rules.size()) +
                           " rules");
  } else if (config.formative_start && system.innermost_only) {
    result.notes.push_back(
        "formative start skipped: innermost systems must start from the "
        "full rule set");
  }

  Engine engine{config,
                start + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(
                                config.timeout_secs))};
  result.root = engine.solve(initial);
  result.verdict = engine.all_closed ? Verdict::Yes : Verdict::Maybe;
  result.nodes = engine.nodes;
  result.elapsed_secs =
      std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace formadp
