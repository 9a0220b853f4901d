#pragma once

#include <vector>

#include "qmus/score.hpp"

namespace qmus::score::detail {

// validate() for an AST whose header may be missing; model-dependent checks
// are skipped when model_known is false.
std::vector<ParseError> validate_partial(const ScoreAST& ast, bool model_known);

}  // namespace qmus::score::detail
