#pragma once

#include "formadp/rule.hpp"

namespace formadp {

/// Rebuilds the system with the most general sort assignment: one sort
/// variable per symbol argument/result position, unified along each rule's
/// typing constraints (both sides share a sort, variable occurrences share a
/// sort). Residual classes become distinct sorts named A, B, C, ...
///
/// The input must not contain marked or paired-projection symbols; rule ids
/// and symbol ids are preserved.
Mtrs infer_sorts(const Mtrs& system);

}  // namespace formadp
