#pragma once

#include <memory>
#include <string>
#include <vector>

#include "eufui/literal.hpp"

namespace eufui {

/// A primitive formula: exists eliminate . body, over one uninterpreted sort.
struct Problem {
  std::shared_ptr<TermTable> table = std::make_shared<TermTable>();
  std::string sort = "U";
  std::vector<SymbolId> functions;
  std::vector<SymbolId> parameters;
  /// Elimination order as written; the first symbol has rank 0.
  std::vector<SymbolId> eliminate;
  Constraint body;
};

}  // namespace eufui
