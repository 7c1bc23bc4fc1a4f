#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "eufui/formula.hpp"
#include "eufui/problem.hpp"

namespace eufui {

/// One node of the s-expression reader: an atom or a parenthesized list.
struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Reads every top-level s-expression of `text`. `;` starts a comment that
/// runs to the end of the line. Throws `ParseError`.
std::vector<SExpr> read_sexprs(std::string_view text);

/// Parses a problem file:
///
///   (declare-sort U 0)
///   (declare-fun f (U U) U)
///   (declare-const z U)
///   (eliminate e0 e1 ...)
///   (assert (= t u)) | (assert (not (= t u))) | (assert (distinct t ...))
///   (compute-ui)
///
/// Throws `ParseError` for syntax errors, undeclared symbols, arity
/// mismatches, duplicate declarations, a missing `eliminate` command, and
/// assertions that are not literals.
Problem parse_problem(std::string_view text);

/// Parses a quantifier-free formula over the symbols of `problem`, as printed
/// by `print_formula`: true, false, =, distinct, not, and, or, =>, let.
/// `let` bindings are expanded while parsing.
Formula parse_formula(std::string_view text, Problem& problem);

}  // namespace eufui
