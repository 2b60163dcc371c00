#pragma once

#include <string>

#include "formadp/prove.hpp"

namespace formadp {

/// Indented plain-text rendering of the proof tree (no verdict line).
std::string proof_text(const ProveResult& result);

/// Whole result as a JSON document: verdict, notes, node count, proof tree
/// with replayable certificates.
std::string proof_json(const ProveResult& result);

}  // namespace formadp
