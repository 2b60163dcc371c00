#pragma once

#include <string>
#include <vector>

#include "formadp/processors.hpp"

namespace formadp {

enum class Verdict { Yes, Maybe };

const char* to_string(Verdict v);

struct ProveConfig {
  RuleSetStrategy strategy = RuleSetStrategy::FormativeUsable;
  bool tcap = false;
  /// Start from (DP(R), FR(DP(R), R), m, formative) instead of
  /// (DP(R), R, m, arbitrary). Ignored for innermost systems.
  bool formative_start = true;
  RedPairConfig search;
  double timeout_secs = 60.0;
  int max_nodes = 2000;
};

/// One step of the proof tree: the problem it faced, the processor that
/// handled it, and the certificate to replay the step.
struct ProofNode {
  DPProblem problem;
  std::string processor;  // "qed", "open", "dependency graph", ...
  Certificate cert;
  std::vector<ProofNode> children;
  bool qed = false;
  bool open = false;
  std::string note;
};

struct ProveResult {
  Verdict verdict = Verdict::Maybe;
  ProofNode root;
  std::vector<std::string> notes;  // e.g. what the formative start removed
  int nodes = 0;
  double elapsed_secs = 0.0;
};

/// Alternates dependency-graph decomposition and the configured
/// reduction-pair processor until every subproblem is discharged or the
/// budget runs out. YES iff no open leaves remain.
ProveResult prove(const Mtrs& system, const ProveConfig& config);

}  // namespace formadp
