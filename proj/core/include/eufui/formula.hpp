#pragma once

#include <memory>
#include <span>
#include <vector>

#include "eufui/literal.hpp"

namespace eufui {

enum class FormulaKind { True, False, Atom, Not, And, Or, Implies, Let };

struct FormulaNode;

/// Immutable quantifier-free formula with structural sharing. `Let` binds a
/// 0-ary symbol to a term inside its body (the body is read with the symbol
/// replaced by the term), which is how DAG definitions stay compressed.
class Formula {
 public:
  Formula();  // true

  static Formula top();
  static Formula bottom();
  static Formula atom(const Literal& lit);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> parts);
  static Formula disjunction(std::vector<Formula> parts);
  static Formula implication(Formula antecedent, Formula consequent);
  static Formula let(SymbolId var, TermId value, Formula body);

  static Formula from(const Constraint& c);
  static Formula from(std::span<const Literal> literals);

  FormulaKind kind() const;
  const Literal& literal() const;
  std::span<const Formula> children() const;
  SymbolId bound_var() const;
  TermId bound_value() const;

  bool is_true() const { return kind() == FormulaKind::True; }
  bool is_false() const { return kind() == FormulaKind::False; }

  const FormulaNode* node() const { return node_.get(); }

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  FormulaKind kind = FormulaKind::True;
  Literal literal{};
  std::vector<Formula> children;
  SymbolId var{};
  TermId value{};
};

/// Expands every `Let` by substitution. Terms are interned, so the result is
/// shared as a DAG even when its printed form is exponentially larger.
Formula unravel(TermTable& table, const Formula& f);

/// Applies `sigma` to every atom, honoring `Let` scoping.
Formula substitute(TermTable& table, const Formula& f, Substitution& sigma);

/// Collects the atoms of a let-free formula.
void collect_literals(const Formula& f, std::vector<Literal>& out);

bool contains_let(const Formula& f);

}  // namespace eufui
