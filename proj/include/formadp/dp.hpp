#pragma once

#include <vector>

#include "formadp/rule.hpp"

namespace formadp {

/// Minimality component: m restricts chains to ones whose instantiated
/// right-hand sides terminate; a allows arbitrary chains.
enum class MinFlag { Minimal, Arbitrary };

/// Strategy component of a DP problem.
enum class StratFlag { Arbitrary, Formative, Innermost };

const char* to_string(MinFlag f);
const char* to_string(StratFlag f);

/// A DP problem (P, R, f1, f2). The signature travels with the problem
/// because marking and paired-projection rules extend it along the proof.
struct DPProblem {
  Signature sig;
  std::vector<Rule> pairs;
  std::vector<Rule> rules;
  MinFlag f1 = MinFlag::Minimal;
  StratFlag f2 = StratFlag::Arbitrary;
};

/// Marked pairs f#(l...) -> g#(r...) for every rule f(l...) -> r and every
/// subterm g(r...) of r with g defined. Extends the signature with the
/// marked symbols; duplicates (up to renaming) are emitted once. Pair ids
/// continue after the last rule id.
struct DpResult {
  Signature sig;
  std::vector<Rule> pairs;
};

DpResult dependency_pairs(const Mtrs& system);

/// The entry problem of the framework: (DP(R), R, m, arbitrary) normally,
/// (DP(R), FR(DP(R), R), m, formative) when the formative start is enabled.
/// Innermost systems refuse the formative start.
DPProblem initial_problem(const Mtrs& system, bool use_formative_start);

/// Estimated dependency graph: edge i -> j iff the capped right-hand side
/// of pair i unifies with the (renamed apart) left-hand side of pair j.
struct DependencyGraph {
  std::vector<std::vector<int>> adj;  // indexed like problem.pairs

  bool has_edge(int from, int to) const;
};

DependencyGraph estimated_dependency_graph(const DPProblem& problem);

/// Strongly connected components that can sustain a chain: components of
/// size >= 2, or single pairs with a self-loop. Ordered by smallest pair
/// index; within one component pairs keep their problem order.
std::vector<std::vector<int>> nontrivial_sccs(const DependencyGraph& g);

}  // namespace formadp
