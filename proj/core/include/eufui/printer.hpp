#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "eufui/formula.hpp"

namespace eufui {

enum class PrintMode {
  /// Keeps `let` bindings and binds repeated closed subterms once, so output
  /// size tracks the DAG size.
  Compressed,
  /// Expands every binding into a plain quantifier-free formula.
  Unravelled,
};

/// A uniform interpolant over the parameters of a problem.
struct UiResult {
  Formula formula;
};

/// Renders `f` with the connectives and, or, =>, not, =, let. Top-level
/// conjuncts and disjuncts go on separate lines.
std::string print_formula(TermTable& table, const Formula& f, PrintMode mode);

std::string print_ui(TermTable& table, const UiResult& ui, PrintMode mode);

/// Number of symbol tokens (parentheses excluded) in printed text.
std::size_t token_count(std::string_view text);

}  // namespace eufui
